#pragma once

#include <optional>
#include <string>
#include <vector>

#include "trialab/clifford.hpp"
#include "trialab/cyccomp.hpp"
#include "trialab/symcomp.hpp"

namespace trialab {

/// tau = Int(t) on End_L V: M -> T nu(M) T^{-1}.
struct TrialitarianAut {
  CyclicComposition gamma;
  SemilinearIsotopy t;

  Matrix apply(const Matrix& m) const;
};

Matrix inner_action(const CubicCyclicExtension& ext, const SemilinearIsotopy& t, const Matrix& m);

/// Adjoint involution of b_Q: sigma(M) = B^{-1} M^T B.
Matrix adjoint_involution(const CyclicComposition& g, const Matrix& m);

/// The 64 matrix units E_ab of End_L V, index 8a + b.
std::vector<Matrix> matrix_units(const FiniteField& L);

/// Checks on the 64 matrix units: t an isotopy of gamma, tau^3 = Id,
/// tau|_L = rho^k, tau sigma = sigma tau, tau(x (x) y) = nu(mu_q)^{-1} u(x) (x) u(y)
/// for basis vectors, fixed subalgebra of F-dimension 64, and, given alpha,
/// the nu x nu branch of the Clifford compatibility.
ValidationReport check_trialitarian(const TrialitarianAut& tau, const AlphaStar* alpha = nullptr);

/// tau for t = rho-hat on Sigma (x) (L, rho).
TrialitarianAut tau_from_symmetric(const SymmetricComposition& s, const CubicCyclicExtension& ext);
/// tau for t = f o rho-hat o f^{-1} on `target`, with f : Sigma (x) (L, rho) -> target
/// an L-linear isotopy.
TrialitarianAut tau_from_symmetric(const SymmetricComposition& s, const CubicCyclicExtension& ext,
                                   const CyclicComposition& target, const SemilinearIsotopy& f);

/// F-dimension of {M in End_L V : tau(M) = M}.
std::size_t fixed_subalgebra_dimension(const TrialitarianAut& tau);

/// Images phi(E_ab) for phi = Int(u).
std::vector<Matrix> inner_images(const CubicCyclicExtension& ext, const SemilinearIsotopy& u);

/// U with phi(M) = U nu(M) U^{-1}, from the images of the 64 matrix units.
/// U is normalized so its first nonzero entry (column by column) is 1, and
/// its multiplier is read off and verified.
SemilinearIsotopy skolem_noether_semilinear(const CyclicComposition& g, const std::vector<Matrix>& phi, int aut_power);

enum class DescentStep {
  input,         // t is not rho-semilinear
  cube,          // t^3 is not a scalar in F^x
  norm,          // eta^{-1} t does not cube to the identity
  multiplier,    // no multiplier, or N(mu) != 1
  hilbert90,     // mu != zeta theta(zeta)^{-1}
  rescale,       // t is not an automorphism of the rescaled composition
  fixed_space,   // dim_F S != 8
  restriction,   // (S, n, *) is not a symmetric composition
  embedding,     // f is not an isotopy or t != f rho-hat f^{-1}
};

std::string to_string(DescentStep step);

class DescentError : public Error {
 public:
  DescentError(DescentStep step, const std::string& what) : Error(to_string(step) + ": " + what), step_(step) {}
  DescentStep step() const { return step_; }

 private:
  DescentStep step_;
};

struct DescentResult {
  SymmetricComposition sigma;
  SemilinearIsotopy f;  // Sigma (x) (L, rho) -> gamma, L-linear
  Fe xi;                // t^3, in F
  Fe eta;               // N(eta) = xi
  Fe mu;                // multiplier of eta^{-1} t
  Fe zeta;              // mu = zeta theta(zeta)^{-1}
  SemilinearIsotopy t_normalized;
  Matrix fixed_basis;   // F-coordinates of S in F^24, reduced row echelon rows
};

DescentResult descend(const CyclicComposition& g, const SemilinearIsotopy& t);

/// An isomorphism Sigma1 -> Sigma2 built from an L-linear isotopy u : gamma1 -> gamma2
/// that conjugates t1 into a scalar multiple of t2. Throws if u does not.
Matrix transport_witness(const CyclicComposition& g1, const DescentResult& d1, const CyclicComposition& g2,
                         const DescentResult& d2, const SemilinearIsotopy& u);

enum class Verdict { conjugate, not_conjugate, undecided };
std::string to_string(Verdict v);

struct InvariantRow {
  std::string name;
  std::optional<std::uint64_t> first;
  std::optional<std::uint64_t> second;
};

struct Classification {
  Verdict verdict = Verdict::undecided;
  std::vector<InvariantRow> invariants;
  std::string evidence;
  std::optional<Matrix> witness;  // Sigma1 -> Sigma2
  DescentResult first;
  DescentResult second;
};

/// Descends both inputs (t with nu = theta is replaced by t^2) and compares
/// Sigma-invariants; a witness from `provenance` or structural equality
/// certifies conjugacy.
Classification classify_conjugacy(const CyclicComposition& g1, const SemilinearIsotopy& t1,
                                  const CyclicComposition& g2, const SemilinearIsotopy& t2,
                                  const std::optional<SemilinearIsotopy>& provenance = std::nullopt);

/// Int(g (x) Id_L) commutes with Int(rho-hat) on every matrix unit.
bool extend_and_commute_check(const SymmetricComposition& s, const CubicCyclicExtension& ext, const Matrix& g);

/// lambda (g (x) Id) rho-hat^k, for an automorphism g of Sigma.
SemilinearIsotopy rational_isotopy(const CyclicComposition& g, const Matrix& aut, int rho_power, Fe lambda);

}  // namespace trialab
