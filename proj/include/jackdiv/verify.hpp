#pragma once

// Monte Carlo checks of integral identities over the positive definite cone
// P_m and the unitary groups U^beta(m).
//
// Every check reports the analytic right-hand side next to an estimate of
// the left-hand side with its standard error.  Cone integrals are written as
// expectations under exact matrix-gamma / matrix-beta laws (Bartlett
// construction), with the shape shifted by k_m or k_1 where the corrected
// domain goes below the classical one; the importance weight is then a
// polynomial, so variances stay finite.  Cone checks cover beta = 1, 2;
// group checks cover beta = 1, 2, 4.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "jackdiv/core.hpp"
#include "jackdiv/matrix.hpp"

namespace jackdiv {

struct PassCriteria {
  double z_max = 3.0;
  double rel_max = 0.05;
};

struct McOptions {
  std::size_t n_samples = 100000;
  std::uint64_t seed = 20240917;
  int threads = 1;
  PassCriteria criteria{};
};

struct VerificationReport {
  std::string identity_id;
  // Canonical "key=value;..." description of the case; digested into
  // param_digest.
  std::string params;
  std::uint64_t param_digest = 0;
  double analytic = 0.0;
  double estimate = 0.0;
  double std_error = 0.0;
  std::size_t n_samples = 0;
  double z_score = 0.0;
  double rel_error = 0.0;
  bool pass = false;
  PassCriteria criteria{};

  // identity_id,param_digest,analytic,estimate,std_error,z,rel,pass
  std::string to_record() const;
  static std::string record_header();
};

// Builds a report and applies the thresholds.
VerificationReport make_report(std::string identity_id, std::string params, double analytic,
                               double estimate, double std_error, std::size_t n_samples,
                               const PassCriteria& criteria);

// ---------------------------------------------------------------------------
// Samplers

// Haar-distributed element of U^beta(m) in the complex representation of
// matrix.hpp.  beta in {1,2,4}.
CMatrix haar_sample(int m, const DivisionAlgebra& algebra, std::mt19937_64& rng);
CMatrix haar_sample(int m, const DivisionAlgebra& algebra, std::uint64_t seed);

// First m columns of a Haar element of U^beta(n): uniform on the Stiefel
// manifold.  Logical size n x m.
CMatrix stiefel_sample(int n, int m, const DivisionAlgebra& algebra, std::mt19937_64& rng);

// Matrix gamma law on P_m^beta with density
//   etr(-X Z) |X|^{a0-(m-1)beta/2-1} |Z|^{a0} / Gamma_m[a0],
// Z = diag(z_eigs), sampled as X = D T*T D with T upper triangular,
// t_ii^2 ~ Gamma(a0 - (i-1)beta/2), off-diagonal components N(0, 1/2) and
// D = Z^{-1/2}.  beta in {1,2}; a0 > (m-1)beta/2.
class ConeSampler {
 public:
  ConeSampler(int m, const DivisionAlgebra& algebra, double shape, std::vector<double> z_eigs);
  CMatrix sample(std::mt19937_64& rng) const;
  // Upper triangular F = T D with sample() = F* F.
  CMatrix sample_factor(std::mt19937_64& rng) const;
  int m() const { return m_; }
  double shape() const { return shape_; }

 private:
  int m_;
  DivisionAlgebra algebra_;
  double shape_;
  std::vector<double> scale_;  // z^{-1/2}
};

// ---------------------------------------------------------------------------
// Scalar kernels for the general-f theorems.

struct ScalarKernel {
  enum class Kind { kExp, kExpPower, kPareto };
  Kind kind = Kind::kExp;
  double j = 0.0;    // kExpPower: f(y) = e^{-y} y^j
  double eta = 1.0;  // kPareto: f(y) = (1 + 2y/eta)^{-beta(am+eta)}

  static ScalarKernel exp() { return {}; }
  static ScalarKernel exp_power(double j) { return {Kind::kExpPower, j, 1.0}; }
  static ScalarKernel pareto(double eta) { return {Kind::kPareto, 0.0, eta}; }
  std::string name() const;
};

// int_0^inf f(y) y^{s-1} dy by adaptive quadrature; (a, m, beta) fix the
// Pareto exponent.  Throws DomainError when the moment diverges.
double kernel_moment(const ScalarKernel& f, double s, double a, int m, int beta);

// ---------------------------------------------------------------------------
// Identities.  Vector arguments are eigenvalues of diagonal matrices.

// E_H C_kappa(X H* Y H) = C_kappa(X) C_kappa(Y) / C_kappa(I).  beta in {1,2,4};
// x or y must be nonnegative.
VerificationReport verify_split_integral(const Partition& kappa, const std::vector<double>& x,
                                         const std::vector<double>& y,
                                         const DivisionAlgebra& algebra, const McOptions& opt);

// int etr(-XZ)|X|^{a-(m-1)beta/2-1} C_kappa(XR) dX = Gamma_m[a,kappa] |Z|^{-a} C_kappa(RZ^{-1})
// for a > (m-1)beta/2 - k_m.
VerificationReport verify_laplace_jack(double a, const Partition& kappa,
                                       const std::vector<double>& r, const std::vector<double>& z,
                                       const DivisionAlgebra& algebra, const McOptions& opt);

// Beta integral over 0 < X < I of |X|^{a-..}|I-X|^{b-..} C_kappa(XR)
// (or C_kappa(RX^{-1}) when inverse_arg).
VerificationReport verify_beta_jack(double a, double b, const Partition& kappa,
                                    const std::vector<double>& r, bool inverse_arg,
                                    const DivisionAlgebra& algebra, const McOptions& opt);

// int f(tr XZ)|X|^{a-..} C_kappa(X^{-1}U) dX (inverse_arg) or C_kappa(XU).
VerificationReport verify_theorem1(const ScalarKernel& f, double a, const Partition& kappa,
                                   const std::vector<double>& u, const std::vector<double>& z,
                                   bool inverse_arg, const DivisionAlgebra& algebra,
                                   const McOptions& opt);

enum class Theorem2Variant { kR1, kR2 };

// int |X|^{a-..}|I+X|^{-(a+b)} C_kappa(RX^{-1}) dX (r1) or C_kappa(RX) (r2).
VerificationReport verify_theorem2(double a, double b, const Partition& kappa,
                                   const std::vector<double>& r, Theorem2Variant variant,
                                   const DivisionAlgebra& algebra, const McOptions& opt);

enum class IncompleteKind { kGamma, kBeta, kUpperGamma };

struct IncompleteParams {
  double a = 1.0;
  double b = 1.0;                   // kBeta only
  std::vector<double> omega{1.0};   // region bound (Xi for kBeta, eigenvalues in (0,1))
  std::vector<double> lambda{1.0};  // exponential rate, commuting with omega
};

VerificationReport verify_incomplete(IncompleteKind kind, const IncompleteParams& p,
                                     const DivisionAlgebra& algebra, const McOptions& opt);

// Analytic right-hand sides of the incomplete gamma / beta identities.
double incomplete_analytic(IncompleteKind kind, const IncompleteParams& p,
                           const DivisionAlgebra& algebra);

struct LaplaceHypergeomCase {
  std::vector<double> upper;  // integrand parameters
  std::vector<double> lower;
  double a = 1.0;
  std::vector<double> u;
  std::vector<double> z;
  std::optional<std::vector<double>> y;  // two-argument integrand
  bool inverse_arg = false;              // integrand evaluated at X^{-1}U
};

// Laplace transform of pFq(XU) (or of pFq(X^{-1}U), which requires a
// terminating integrand).
VerificationReport verify_laplace_hypergeom(const LaplaceHypergeomCase& c,
                                            const DivisionAlgebra& algebra, const McOptions& opt);

// E exp(beta Re tr(X H1)) over the Stiefel manifold V_{m,n} against
// 0F1(beta n/2; beta^2 XX*/4), X = [diag(s) | 0] (m x n).  beta in {1,2}.
VerificationReport verify_stiefel_0f1(const std::vector<double>& s, int n,
                                      const DivisionAlgebra& algebra, const McOptions& opt);

// E_H etr(X H Y H*) = 0F0^(m)(X, Y).  beta in {1,2,4}.
VerificationReport verify_two_matrix_0f0(const std::vector<double>& x,
                                         const std::vector<double>& y,
                                         const DivisionAlgebra& algebra, const McOptions& opt);

// Default suite.  quick trades sample size for speed; a nonzero base_samples
// overrides the per-case base count (cases scale it by fixed factors).
std::vector<VerificationReport> run_verify_all(bool quick, std::uint64_t seed, int threads,
                                               std::size_t base_samples = 0,
                                               const PassCriteria& criteria = {});

}  // namespace jackdiv
