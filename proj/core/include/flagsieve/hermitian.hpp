// GF(q^2) arithmetic over fixed irreducible polynomials, Hermitian geometry
// (isotropic/nonisotropic projective points), unitary transvection
// generators, the natural permutation representations of PSU_3(3) and
// PSU_4(2), and the PG(3,3) point-hyperplane design.
//
// Field bases are pinned so emitted generator files are bit-stable:
// GF(4) = GF(2)[x]/(x^2+x+1), GF(9) = GF(3)[x]/(x^2+1).

#pragma once

#include <vector>

#include "flagsieve/design.hpp"
#include "flagsieve/permgroup.hpp"

namespace flagsieve {

// GF(q^2) for prime q; elements are indices a0 + q*a1 representing
// a0 + a1*x in the fixed basis.  The conjugation map is x -> x^q.
class QuadraticField {
  public:
    explicit QuadraticField(int q);

    int q() const { return q_; }
    int size() const { return q_ * q_; }

    int add(int a, int b) const;
    int sub(int a, int b) const;
    int neg(int a) const;
    int mul(int a, int b) const { return mul_[a][b]; }
    int inv(int a) const;
    int conj(int a) const { return conj_[a]; }
    // x * conj(x), always in the base field.
    int norm(int a) const { return mul(a, conj(a)); }
    // x + conj(x).
    int trace(int a) const { return add(a, conj(a)); }
    bool in_base_field(int a) const { return a < q_; }

  private:
    int q_;
    std::vector<std::vector<int>> mul_;
    std::vector<int> conj_, inv_;
};

using FVector = std::vector<int>;   // coordinates as field indices
using FMatrix = std::vector<FVector>;  // row-major, square

// Projective point: normalized so the first nonzero coordinate is 1.
FVector normalize_point(const QuadraticField& F, FVector v);

class HermitianGeometry {
  public:
    HermitianGeometry(int n, int q);

    int n() const { return n_; }
    const QuadraticField& field() const { return F_; }

    // Standard Hermitian form sum x_i * conj(y_i) (identity Gram matrix).
    int form(const FVector& x, const FVector& y) const;
    // h(v, v); lies in the GF(q) subfield.
    int norm(const FVector& v) const;

    const std::vector<FVector>& isotropic() const { return isotropic_; }
    const std::vector<FVector>& nonisotropic() const { return nonisotropic_; }

    // Row-vector action x -> x*M as a permutation of the combined point
    // list (isotropic points first, then nonisotropic).
    Permutation matrix_permutation(const FMatrix& M) const;
    // Coordinate-wise Frobenius a -> a^q followed by renormalization;
    // together with the matrix group it realizes the .2 extension.
    Permutation frobenius_permutation() const;

    bool preserves_form(const FMatrix& M) const;
    int determinant(FMatrix M) const;

  private:
    int index_of(const FVector& p) const;

    int n_, q_;
    QuadraticField F_;
    std::vector<FVector> isotropic_, nonisotropic_;
    std::vector<FVector> all_points_;
};

// Partition of the projective points of GF(q^2)^n by vanishing of the
// Hermitian norm.  Supported: n in {3,4}, q in {2,3}.
std::pair<std::vector<FVector>, std::vector<FVector>> point_orbits(int n,
                                                                   int q);

// Form-preserving determinant-1 matrices (unitary transvections, augmented
// if needed) whose permutation image on the combined point set generates
// the full special unitary group.  Supported: (3,3) and (4,2).
std::vector<FMatrix> su_generators(int n, int q);

// The natural data for one of the two catalog groups: combined action on
// isotropic + nonisotropic points, the two restrictions, and the Frobenius
// extension generator.
struct NaturalActions {
    int n = 0, q = 0;
    int isotropic_count = 0, nonisotropic_count = 0;
    PermGroup combined;       // degree = isotropic + nonisotropic
    Permutation frobenius;    // on the combined point set

    NaturalActions() : combined(1) {}

    PermGroup isotropic_action() const;
    PermGroup nonisotropic_action() const;
    Permutation restrict_isotropic(const Permutation& p) const;
    Permutation restrict_nonisotropic(const Permutation& p) const;
};

// Builds the combined permutation representation and verifies its order
// against the group-order formula; throws std::runtime_error (reporting the
// achieved order) on mismatch.
NaturalActions natural_actions(int n, int q);

// Points vs hyperplanes of PG(3,q) under containment; for q=3 the
// symmetric (40,13,4) design whose complement appears in the catalog.
IncidenceStructure pg3_design(int q = 3);

}  // namespace flagsieve
