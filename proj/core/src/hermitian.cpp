#include "flagsieve/hermitian.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace flagsieve {

QuadraticField::QuadraticField(int q) : q_(q) {
    int c0, c1;  // x^2 = c0 + c1*x
    if (q == 2) {
        c0 = 1;
        c1 = 1;  // x^2 + x + 1
    } else if (q == 3) {
        c0 = 2;
        c1 = 0;  // x^2 + 1
    } else {
        throw std::invalid_argument("QuadraticField: q must be 2 or 3");
    }
    const int s = q * q;
    mul_.assign(s, std::vector<int>(s, 0));
    for (int a = 0; a < s; ++a) {
        int a0 = a % q, a1 = a / q;
        for (int b = 0; b < s; ++b) {
            int b0 = b % q, b1 = b / q;
            int r0 = (a0 * b0 + a1 * b1 % q * c0) % q;
            int r1 = (a0 * b1 + a1 * b0 + a1 * b1 % q * c1) % q;
            mul_[a][b] = r0 + q * r1;
        }
    }
    conj_.resize(s);
    for (int a = 0; a < s; ++a) {
        int r = a;
        for (int i = 1; i < q; ++i) r = mul(r, a);  // a^q
        conj_[a] = r;
    }
    inv_.assign(s, -1);
    for (int a = 1; a < s; ++a)
        for (int b = 1; b < s; ++b)
            if (mul(a, b) == 1) {
                inv_[a] = b;
                break;
            }
}

int QuadraticField::add(int a, int b) const {
    return (a % q_ + b % q_) % q_ + q_ * ((a / q_ + b / q_) % q_);
}

int QuadraticField::neg(int a) const {
    return (q_ - a % q_) % q_ + q_ * ((q_ - a / q_) % q_);
}

int QuadraticField::sub(int a, int b) const { return add(a, neg(b)); }

int QuadraticField::inv(int a) const {
    if (a == 0) throw std::domain_error("field inverse of zero");
    return inv_[a];
}

FVector normalize_point(const QuadraticField& F, FVector v) {
    for (int c : v)
        if (c != 0) {
            int s = F.inv(c);
            for (auto& x : v) x = F.mul(x, s);
            return v;
        }
    throw std::invalid_argument("normalize_point: zero vector");
}

namespace {

// Canonical enumeration of projective points: leading coordinate 1,
// earlier coordinates 0, trailing coordinates free, in lex order.
std::vector<FVector> projective_points(int n, int field_size) {
    std::vector<FVector> pts;
    for (int lead = 0; lead < n; ++lead) {
        int free = n - lead - 1;
        long total = 1;
        for (int i = 0; i < free; ++i) total *= field_size;
        for (long code = 0; code < total; ++code) {
            FVector v(n, 0);
            v[lead] = 1;
            long c = code;
            for (int i = n - 1; i > lead; --i) {
                v[i] = static_cast<int>(c % field_size);
                c /= field_size;
            }
            pts.push_back(std::move(v));
        }
    }
    return pts;
}

}  // namespace

HermitianGeometry::HermitianGeometry(int n, int q) : n_(n), q_(q), F_(q) {
    if (n != 3 && n != 4)
        throw std::invalid_argument("HermitianGeometry: n must be 3 or 4");
    for (auto& p : projective_points(n, F_.size())) {
        if (norm(p) == 0)
            isotropic_.push_back(p);
        else
            nonisotropic_.push_back(p);
    }
    all_points_ = isotropic_;
    all_points_.insert(all_points_.end(), nonisotropic_.begin(),
                       nonisotropic_.end());
}

int HermitianGeometry::form(const FVector& x, const FVector& y) const {
    int s = 0;
    for (int i = 0; i < n_; ++i)
        s = F_.add(s, F_.mul(x[i], F_.conj(y[i])));
    return s;
}

int HermitianGeometry::norm(const FVector& v) const { return form(v, v); }

int HermitianGeometry::index_of(const FVector& p) const {
    auto it = std::find(all_points_.begin(), all_points_.end(), p);
    if (it == all_points_.end())
        throw std::logic_error("HermitianGeometry: point not found");
    return static_cast<int>(it - all_points_.begin());
}

Permutation HermitianGeometry::matrix_permutation(const FMatrix& M) const {
    std::vector<int> img(all_points_.size());
    for (std::size_t i = 0; i < all_points_.size(); ++i) {
        const FVector& p = all_points_[i];
        FVector r(n_, 0);
        for (int col = 0; col < n_; ++col)
            for (int row = 0; row < n_; ++row)
                r[col] = F_.add(r[col], F_.mul(p[row], M[row][col]));
        img[i] = index_of(normalize_point(F_, std::move(r)));
    }
    return Permutation(std::move(img));
}

Permutation HermitianGeometry::frobenius_permutation() const {
    std::vector<int> img(all_points_.size());
    for (std::size_t i = 0; i < all_points_.size(); ++i) {
        FVector r = all_points_[i];
        for (auto& c : r) c = F_.conj(c);
        img[i] = index_of(normalize_point(F_, std::move(r)));
    }
    return Permutation(std::move(img));
}

bool HermitianGeometry::preserves_form(const FMatrix& M) const {
    // Rows of M are the images of the basis vectors.
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) {
            int want = (i == j) ? 1 : 0;
            if (form(M[i], M[j]) != want) return false;
        }
    return true;
}

int HermitianGeometry::determinant(FMatrix M) const {
    int det = 1;
    for (int col = 0; col < n_; ++col) {
        int pivot = -1;
        for (int row = col; row < n_; ++row)
            if (M[row][col] != 0) {
                pivot = row;
                break;
            }
        if (pivot < 0) return 0;
        if (pivot != col) {
            std::swap(M[pivot], M[col]);
            det = F_.neg(det);
        }
        det = F_.mul(det, M[col][col]);
        int s = F_.inv(M[col][col]);
        for (int row = col + 1; row < n_; ++row) {
            if (M[row][col] == 0) continue;
            int f = F_.mul(M[row][col], s);
            for (int c2 = col; c2 < n_; ++c2)
                M[row][c2] = F_.sub(M[row][c2], F_.mul(f, M[col][c2]));
        }
    }
    return det;
}

std::pair<std::vector<FVector>, std::vector<FVector>> point_orbits(int n,
                                                                   int q) {
    if ((n != 3 && n != 4) || (q != 2 && q != 3))
        throw std::invalid_argument("point_orbits: unsupported (n, q)");
    HermitianGeometry geo(n, q);
    return {geo.isotropic(), geo.nonisotropic()};
}

namespace {

Integer su_order_target(int n, int q) {
    Integer o = ipow(q, n * (n - 1) / 2);
    for (int i = 2; i <= n; ++i)
        o *= ipow(q, i) - ((i % 2 == 0) ? 1 : -1);
    return o;  // centers are trivial for (3,3) and (4,2)
}

FMatrix transvection(const HermitianGeometry& geo, const FVector& v, int c) {
    const auto& F = geo.field();
    int n = geo.n();
    FMatrix T(n, FVector(n, 0));
    for (int i = 0; i < n; ++i) {
        T[i][i] = 1;
        int coeff = F.mul(c, F.conj(v[i]));  // c * h(e_i, v)
        for (int j = 0; j < n; ++j)
            T[i][j] = F.add(T[i][j], F.mul(coeff, v[j]));
    }
    return T;
}

}  // namespace

std::vector<FMatrix> su_generators(int n, int q) {
    if (!((n == 3 && q == 3) || (n == 4 && q == 2)))
        throw std::invalid_argument("su_generators: unsupported (n, q)");
    HermitianGeometry geo(n, q);
    const auto& F = geo.field();

    std::vector<int> trace_zero;
    for (int c = 1; c < F.size(); ++c)
        if (F.trace(c) == 0) trace_zero.push_back(c);

    const Integer target = su_order_target(n, q);
    std::vector<FMatrix> mats;
    std::vector<Permutation> perms;
    for (const auto& v : geo.isotropic()) {
        for (int c : trace_zero) {
            FMatrix T = transvection(geo, v, c);
            if (!geo.preserves_form(T) || geo.determinant(T) != 1)
                throw std::logic_error("transvection is not special unitary");
            mats.push_back(T);
            perms.push_back(geo.matrix_permutation(T));
        }
        if (mats.size() >= 3) {
            PermGroup g(perms.front().degree(), perms);
            if (g.order() == target) return mats;
        }
    }
    PermGroup g(perms.front().degree(), perms);
    throw std::runtime_error("su_generators: transvections reached order " +
                             g.order().str() + ", expected " + target.str());
}

PermGroup NaturalActions::isotropic_action() const {
    std::vector<Permutation> gens;
    for (const auto& p : combined.generators())
        gens.push_back(restrict_isotropic(p));
    return PermGroup(isotropic_count, std::move(gens));
}

PermGroup NaturalActions::nonisotropic_action() const {
    std::vector<Permutation> gens;
    for (const auto& p : combined.generators())
        gens.push_back(restrict_nonisotropic(p));
    return PermGroup(nonisotropic_count, std::move(gens));
}

Permutation NaturalActions::restrict_isotropic(const Permutation& p) const {
    std::vector<int> img(isotropic_count);
    for (int i = 0; i < isotropic_count; ++i) {
        if (p[i] >= isotropic_count)
            throw std::logic_error("permutation does not preserve norm split");
        img[i] = p[i];
    }
    return Permutation(std::move(img));
}

Permutation NaturalActions::restrict_nonisotropic(const Permutation& p) const {
    std::vector<int> img(nonisotropic_count);
    for (int i = 0; i < nonisotropic_count; ++i) {
        int m = p[isotropic_count + i];
        if (m < isotropic_count)
            throw std::logic_error("permutation does not preserve norm split");
        img[i] = m - isotropic_count;
    }
    return Permutation(std::move(img));
}

NaturalActions natural_actions(int n, int q) {
    HermitianGeometry geo(n, q);
    auto mats = su_generators(n, q);
    std::vector<Permutation> perms;
    perms.reserve(mats.size());
    for (const auto& M : mats) perms.push_back(geo.matrix_permutation(M));

    NaturalActions acts;
    acts.n = n;
    acts.q = q;
    acts.isotropic_count = static_cast<int>(geo.isotropic().size());
    acts.nonisotropic_count = static_cast<int>(geo.nonisotropic().size());
    acts.combined =
        PermGroup(acts.isotropic_count + acts.nonisotropic_count, perms);
    acts.frobenius = geo.frobenius_permutation();

    const Integer target = su_order_target(n, q);
    if (acts.combined.order() != target)
        throw std::runtime_error("natural_actions: order " +
                                 acts.combined.order().str() + ", expected " +
                                 target.str());
    return acts;
}

IncidenceStructure pg3_design(int q) {
    if (q != 3) throw std::invalid_argument("pg3_design: only q=3 supported");
    const int n = 4;
    auto pts = projective_points(n, q);  // prime field, indices are values
    const int v = static_cast<int>(pts.size());
    std::vector<std::uint64_t> blocks;
    for (const auto& h : pts) {  // hyperplanes in the same canonical order
        std::uint64_t mask = 0;
        for (int i = 0; i < v; ++i) {
            int dot = 0;
            for (int c = 0; c < n; ++c) dot = (dot + pts[i][c] * h[c]) % q;
            if (dot == 0) mask |= std::uint64_t(1) << i;
        }
        blocks.push_back(mask);
    }
    return IncidenceStructure(v, std::move(blocks));
}

}  // namespace flagsieve
