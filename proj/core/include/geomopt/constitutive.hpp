#pragma once

// Three- and four-dimensional constitutive relations.

#include "geomopt/tensor.hpp"

namespace geomopt {

/// Permittivity eps^{ij}, permeability mu^{ij} and magneto-electric coupling w_i.
struct MaterialTensors {
  Mat3 eps;
  Mat3 mu;
  Covec3 w;

  static MaterialTensors vacuum() { return {Mat3::identity(), Mat3::identity(), {}}; }
};

/// Inductions (D^i, B^i) produced by a 3D constitutive relation.
struct Inductions {
  Vec3 D;
  Vec3 B;
};

/// D^i = eps^{ij} E_j, B^i = mu^{ij} H_j. Media with w != 0 go through
/// geometrized_constitutive instead; a nonzero w throws NonZeroCoupling.
Inductions apply_constitutive_3d(const MaterialTensors& m, const Covec3& E, const Covec3& H);

/// lambda^{ab}_{cd}, antisymmetric in the upper pair and in the lower pair.
class LambdaTensor {
 public:
  LambdaTensor() = default;
  explicit LambdaTensor(const Rank4& components) : l_(components) {}

  double operator()(std::size_t a, std::size_t b, std::size_t c, std::size_t d) const {
    return l_(a, b, c, d);
  }
  const Rank4& components() const { return l_; }

  /// max |l^{ab}_{cd} + l^{ba}_{cd}| and |l^{ab}_{cd} + l^{ab}_{dc}|.
  double pair_antisymmetry_defect() const;

 private:
  Rank4 l_;
};

// Strong types so that mu and mu^-1 cannot be swapped by accident.
struct Permeability {
  Mat3 m;
};
struct InversePermeability {
  Mat3 m;
};

/// Block structure
///   l^{0i}_{0j} = eps^i_j / 2,  l^{0i}_{kl} = l^{kl}_{0i} = 0,
///   l^{ij}_{mn} = eps^{ijk} eps_{lmn} (mu^-1)^l_k / 2,
/// completed by pair antisymmetry.
LambdaTensor lambda_from_eps_mu(const Mat3& eps_mixed, const InversePermeability& mu_inv);

/// As above, inverting mu first. Throws SingularMu when mu is not invertible.
LambdaTensor lambda_from_eps_mu(const Mat3& eps_mixed, const Permeability& mu);

/// G^{ab} = l^{ab}_{cd} F^{cd}. F must be contravariant F-kind.
FieldTensor apply_lambda(const LambdaTensor& l, const FieldTensor& F_upper);

struct IsotropicMedium {
  double eps = 1.0;
  double mu = 1.0;
};

struct MediumVelocity {
  Vec3 u;
  double c = 1.0;
};

/// Factors of the isotropic rest-frame permeability tensor
/// l_{abcd} = l_{ac} l_{bd}.
struct IsotropicFactors {
  Mat4 lower;  // diag(1/(eps sqrt(mu)), -sqrt(mu), -sqrt(mu), -sqrt(mu))
  Mat4 upper;  // diag(eps sqrt(mu), -1/sqrt(mu), -1/sqrt(mu), -1/sqrt(mu))
};

/// Throws NonPositiveMedium unless eps > 0 and mu > 0.
IsotropicFactors isotropic_lambda_factored(const IsotropicMedium& m);

/// G^{ab} = l^{ac} l^{bd} F_{cd}: the factored tensor acts on covariant F the
/// same way sqrt(-g) g^{ac} g^{bd} does in the geometrized relation.
FieldTensor apply_isotropic_factored(const IsotropicFactors& f, const FieldTensor& F_lower);

/// Minkowski relations for an isotropic medium moving with velocity u,
/// first-order (simplified) form:
///   D = eps E + (eps mu - 1) (u/c x H),  B = mu H - (eps mu - 1) (u/c x E).
/// Throws SuperluminalVelocity when |u| >= c.
Inductions minkowski_moving_3d(const IsotropicMedium& m, const MediumVelocity& v, const Vec3& E,
                               const Covec3& H);

/// Tamm's relations for a diagonal anisotropic medium moving along a principal
/// axis, solved exactly for (D, B) as a 6x6 linear system:
///   D = eps (E + u/c x B) - u/c x H,  B = mu (H - u/c x D) + u/c x E.
/// Throws MisalignedVelocity, NonDiagonalMaterial, SuperluminalVelocity or
/// SingularSystem.
Inductions tamm_moving_anisotropic_3d(const Mat3& eps_mixed, const Mat3& mu_mixed,
                                      const MediumVelocity& v, const Vec3& E, const Covec3& H,
                                      double align_tol = 1e-9);

/// Max-abs residual of both defining Tamm equations for a candidate (D, B).
double tamm_residual(const Mat3& eps_mixed, const Mat3& mu_mixed, const MediumVelocity& v,
                     const Vec3& E, const Covec3& H, const Inductions& candidate);

}  // namespace geomopt
