#include "flagsieve/permgroup.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace flagsieve {

Permutation::Permutation(int degree) : img_(degree) {
    std::iota(img_.begin(), img_.end(), 0);
}

Permutation::Permutation(std::vector<int> images) : img_(std::move(images)) {
    std::vector<char> seen(img_.size(), 0);
    for (int x : img_) {
        if (x < 0 || x >= degree() || seen[x])
            throw std::invalid_argument("Permutation: images not a bijection");
        seen[x] = 1;
    }
}

bool Permutation::is_identity() const {
    for (int i = 0; i < degree(); ++i)
        if (img_[i] != i) return false;
    return true;
}

Permutation Permutation::operator*(const Permutation& rhs) const {
    if (degree() != rhs.degree())
        throw std::invalid_argument("Permutation: degree mismatch");
    std::vector<int> r(img_.size());
    for (int i = 0; i < degree(); ++i) r[i] = rhs.img_[img_[i]];
    Permutation p;
    p.img_ = std::move(r);
    return p;
}

Permutation Permutation::inverse() const {
    std::vector<int> r(img_.size());
    for (int i = 0; i < degree(); ++i) r[img_[i]] = i;
    Permutation p;
    p.img_ = std::move(r);
    return p;
}

Permutation Permutation::conjugate(const Permutation& by) const {
    return by.inverse() * (*this) * by;
}

Integer Permutation::order() const {
    std::vector<char> seen(img_.size(), 0);
    Integer ord = 1;
    for (int i = 0; i < degree(); ++i) {
        if (seen[i]) continue;
        Integer len = 0;
        int j = i;
        while (!seen[j]) {
            seen[j] = 1;
            j = img_[j];
            ++len;
        }
        ord = lcm(ord, len);
    }
    return ord;
}

int Permutation::first_moved() const {
    for (int i = 0; i < degree(); ++i)
        if (img_[i] != i) return i;
    return -1;
}

std::uint64_t Permutation::hash() const {
    std::uint64_t h = 0x9e3779b97f4a7c15ull ^ img_.size();
    for (int x : img_) {
        h ^= static_cast<std::uint64_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) +
             (h >> 2);
        h *= 0xff51afd7ed558ccdull;
        h ^= h >> 33;
    }
    return h;
}

// ---------------------------------------------------------------------------
// StabilizerChain

StabilizerChain::StabilizerChain(int degree,
                                 const std::vector<Permutation>& gens,
                                 const std::vector<int>& base_hint,
                                 Integer order_guard)
    : degree_(degree) {
    for (int b : base_hint) {
        if (b < 0 || b >= degree)
            throw std::invalid_argument("base_hint point out of range");
        append_level(b);
    }
    std::vector<Permutation> todo;
    for (const auto& g : gens) {
        if (g.degree() != degree)
            throw std::invalid_argument("StabilizerChain: degree mismatch");
        if (!g.is_identity()) todo.push_back(g);
    }
    if (todo.empty() && base_.empty()) return;

    // Place each input generator at the deepest level whose base prefix it
    // fixes, appending base points as needed.
    for (const auto& g : todo) {
        int l = 0;
        while (l < levels() && g[base_[l]] == base_[l]) ++l;
        if (l == levels()) append_level(g.first_moved());
        for (int i = 0; i <= l && i < levels(); ++i) gens_[i].push_back(g);
    }
    // Deterministic closure: verify every Schreier generator sifts to the
    // identity, extending the chain where one does not.
    int i = levels() - 1;
    while (i >= 0) {
        recompute_orbit(i);
        if (order() > order_guard)
            throw std::length_error("StabilizerChain: order guard exceeded");
        bool clean = true;
        for (std::size_t oi = 0; oi < orbit_[i].size() && clean; ++oi) {
            const int beta = orbit_[i][oi];
            for (const auto& x : gens_[i]) {
                Permutation to_beta = trans_[i][oi];
                Permutation sg = to_beta * x;
                int img = x[beta];
                Permutation h = sg * transversal_to(i, img).inverse();
                auto [res, j] = strip(std::move(h), i + 1);
                if (res.is_identity()) continue;
                if (j == levels()) append_level(res.first_moved());
                for (int l = i + 1; l <= j && l < levels(); ++l)
                    gens_[l].push_back(res);
                i = std::min(j, levels() - 1);
                clean = false;
                break;
            }
        }
        if (clean) --i;
    }
}

void StabilizerChain::append_level(int point) {
    base_.push_back(point);
    gens_.emplace_back();
    orbit_.emplace_back();
    orbit_pos_.emplace_back(degree_, -1);
    trans_.emplace_back();
}

void StabilizerChain::recompute_orbit(int level) {
    auto& orb = orbit_[level];
    auto& pos = orbit_pos_[level];
    auto& tr = trans_[level];
    std::fill(pos.begin(), pos.end(), -1);
    orb.clear();
    tr.clear();
    orb.push_back(base_[level]);
    pos[base_[level]] = 0;
    tr.push_back(Permutation(degree_));
    for (std::size_t head = 0; head < orb.size(); ++head) {
        int beta = orb[head];
        for (const auto& x : gens_[level]) {
            int gamma = x[beta];
            if (pos[gamma] < 0) {
                pos[gamma] = static_cast<int>(orb.size());
                orb.push_back(gamma);
                tr.push_back(tr[head] * x);
            }
        }
    }
}

Permutation StabilizerChain::transversal_to(int level, int point) const {
    int p = orbit_pos_[level][point];
    if (p < 0) throw std::logic_error("transversal_to: point not in orbit");
    return trans_[level][p];
}

std::pair<Permutation, int> StabilizerChain::strip(Permutation g,
                                                   int from_level) const {
    for (int i = from_level; i < levels(); ++i) {
        int beta = g[base_[i]];
        int p = orbit_pos_[i][beta];
        if (p < 0) return {std::move(g), i};
        g = g * trans_[i][p].inverse();
    }
    return {std::move(g), levels()};
}

Integer StabilizerChain::order() const {
    Integer o = 1;
    for (const auto& orb : orbit_)
        if (!orb.empty()) o *= static_cast<long>(orb.size());
    return o;
}

bool StabilizerChain::contains(const Permutation& g) const {
    if (g.degree() != degree_) return false;
    return strip(g).first.is_identity();
}

// ---------------------------------------------------------------------------
// PermGroup

PermGroup::PermGroup(int degree) : degree_(degree) {
    chain_ = std::make_shared<StabilizerChain>(degree,
                                               std::vector<Permutation>{});
}

PermGroup::PermGroup(int degree, std::vector<Permutation> generators,
                     const std::vector<int>& base_hint)
    : degree_(degree), gens_(std::move(generators)) {
    if (gens_.empty()) gens_.push_back(Permutation(degree));
    chain_ = std::make_shared<StabilizerChain>(degree_, gens_, base_hint);
}

bool PermGroup::contains(const Permutation& g) const {
    return chain_->contains(g);
}

bool PermGroup::is_subgroup_of(const PermGroup& g) const {
    if (degree_ != g.degree()) return false;
    for (const auto& x : gens_)
        if (!g.contains(x)) return false;
    return true;
}

std::vector<int> PermGroup::orbit(int point) const {
    if (point < 0 || point >= degree_)
        throw std::invalid_argument("orbit: point out of range");
    std::vector<int> orb{point};
    std::vector<char> seen(degree_, 0);
    seen[point] = 1;
    for (std::size_t head = 0; head < orb.size(); ++head)
        for (const auto& x : gens_) {
            int g = x[orb[head]];
            if (!seen[g]) {
                seen[g] = 1;
                orb.push_back(g);
            }
        }
    std::sort(orb.begin(), orb.end());
    return orb;
}

std::vector<std::vector<int>> PermGroup::orbits() const {
    std::vector<std::vector<int>> res;
    std::vector<char> seen(degree_, 0);
    for (int p = 0; p < degree_; ++p) {
        if (seen[p]) continue;
        auto orb = orbit(p);
        for (int q : orb) seen[q] = 1;
        res.push_back(std::move(orb));
    }
    return res;
}

bool PermGroup::is_transitive() const {
    return static_cast<int>(orbit(0).size()) == degree_;
}

PermGroup PermGroup::stabilizer(int point) const {
    if (point < 0 || point >= degree_)
        throw std::invalid_argument("stabilizer: point out of range");
    StabilizerChain rebased(degree_, gens_, {point});
    std::vector<Permutation> sgens;
    if (rebased.levels() > 1) sgens = rebased.level_generators(1);
    if (sgens.empty()) sgens.push_back(Permutation(degree_));
    return PermGroup(degree_, std::move(sgens));
}

namespace {

// Size of the minimal block containing {a, b} (union-find refinement).
int minimal_block_size(const std::vector<Permutation>& gens, int degree,
                       int a, int b) {
    std::vector<int> parent(degree);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::vector<std::pair<int, int>> queue;
    parent[find(b)] = find(a);
    queue.emplace_back(a, b);
    while (!queue.empty()) {
        auto [x, y] = queue.back();
        queue.pop_back();
        for (const auto& g : gens) {
            int gx = find(g[x]), gy = find(g[y]);
            if (gx != gy) {
                parent[gy] = gx;
                queue.emplace_back(gx, gy);
            }
        }
    }
    int root = find(a), size = 0;
    for (int i = 0; i < degree; ++i)
        if (find(i) == root) ++size;
    return size;
}

}  // namespace

bool PermGroup::is_primitive() const {
    if (!is_transitive())
        throw std::invalid_argument("is_primitive: group is not transitive");
    if (degree_ == 1) return true;
    for (int b = 1; b < degree_; ++b)
        if (minimal_block_size(gens_, degree_, 0, b) != degree_) return false;
    return true;
}

std::vector<std::pair<int, int>> PermGroup::suborbits(int point) const {
    if (!is_transitive())
        throw std::invalid_argument("suborbits: group is not transitive");
    PermGroup stab = stabilizer(point);
    std::vector<std::pair<int, int>> res;
    for (const auto& orb : stab.orbits())
        res.emplace_back(orb.front(), static_cast<int>(orb.size()));
    std::sort(res.begin(), res.end());
    return res;
}

std::vector<Permutation> PermGroup::elements(std::size_t limit) const {
    Integer o = order();
    if (o > limit)
        throw std::length_error("elements: order " + o.str() + " over limit");
    std::vector<Permutation> elems{Permutation(degree_)};
    std::set<Permutation> seen(elems.begin(), elems.end());
    for (std::size_t head = 0; head < elems.size(); ++head) {
        for (const auto& x : gens_) {
            Permutation e = elems[head] * x;
            if (seen.insert(e).second) elems.push_back(std::move(e));
        }
    }
    return elems;
}

std::set<Integer> PermGroup::element_order_spectrum(std::size_t limit) const {
    std::set<Integer> spec;
    for (const auto& e : elements(limit)) spec.insert(e.order());
    return spec;
}

// ---------------------------------------------------------------------------
// Coset action

Permutation ActionHomomorphism::image_of(const Permutation& x) const {
    std::vector<int> img(target_degree, -1);
    for (int i = 0; i < target_degree; ++i) {
        Permutation moved = coset_reps[i] * x;
        int j = -1;
        for (int c = 0; c < target_degree; ++c) {
            if (subgroup.contains(moved * coset_reps[c].inverse())) {
                j = c;
                break;
            }
        }
        if (j < 0) throw std::logic_error("coset image not found");
        img[i] = j;
    }
    return Permutation(std::move(img));
}

PermGroup ActionHomomorphism::image_group() const {
    return PermGroup(target_degree, generator_images);
}

ActionHomomorphism coset_action(const PermGroup& g, const PermGroup& h) {
    if (!h.is_subgroup_of(g))
        throw std::invalid_argument("coset_action: h is not a subgroup of g");
    Integer index = g.order() / h.order();
    if (index > 10'000)
        throw std::length_error("coset_action: index " + index.str() +
                                " exceeds guard");
    const int n = static_cast<int>(index);

    ActionHomomorphism act;
    act.source_degree = g.degree();
    act.target_degree = n;
    act.source_gens = g.generators();
    act.subgroup = h;
    act.coset_reps.push_back(Permutation(g.degree()));

    auto coset_of = [&](const Permutation& x) {
        for (std::size_t c = 0; c < act.coset_reps.size(); ++c)
            if (h.contains(x * act.coset_reps[c].inverse()))
                return static_cast<int>(c);
        return -1;
    };

    for (std::size_t head = 0; head < act.coset_reps.size(); ++head) {
        for (const auto& x : g.generators()) {
            Permutation moved = act.coset_reps[head] * x;
            if (coset_of(moved) < 0) act.coset_reps.push_back(std::move(moved));
        }
    }
    if (static_cast<int>(act.coset_reps.size()) != n)
        throw std::logic_error("coset_action: transversal size mismatch");

    for (const auto& x : g.generators()) {
        std::vector<int> img(n);
        for (int i = 0; i < n; ++i) {
            int j = coset_of(act.coset_reps[i] * x);
            if (j < 0) throw std::logic_error("coset_action: image not found");
            img[i] = j;
        }
        act.generator_images.push_back(Permutation(std::move(img)));
    }
    return act;
}

// ---------------------------------------------------------------------------
// Randomized subgroup search

std::optional<PermGroup> find_subgroup(
    const PermGroup& g, const Integer& target_order,
    const std::optional<std::set<Integer>>& spectrum, std::uint64_t seed,
    int attempt_budget) {
    if (g.order() % target_order != 0)
        throw std::invalid_argument(
            "find_subgroup: target order does not divide group order");
    if (target_order == g.order()) return g;

    std::mt19937_64 rng(seed ^ 0xda3e39cb94b95bdbULL);
    // Random elements by bounded random words in the generators.
    auto random_element = [&]() {
        const auto& gens = g.generators();
        std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
        std::uniform_int_distribution<int> len(3, 12);
        Permutation e(g.degree());
        int l = len(rng);
        for (int i = 0; i < l; ++i) e = e * gens[pick(rng)];
        return e;
    };

    auto matches = [&](const PermGroup& cand) {
        if (cand.order() != target_order) return false;
        if (!spectrum) return true;
        return cand.element_order_spectrum() == *spectrum;
    };

    std::vector<Permutation> pool;
    for (int i = 0; i < 64; ++i) pool.push_back(random_element());

    std::uniform_int_distribution<std::size_t> pick_pool(0, pool.size() - 1);
    for (int attempt = 0; attempt < attempt_budget; ++attempt) {
        Permutation x = pool[pick_pool(rng)];
        Permutation y = pool[pick_pool(rng)];
        if (x.is_identity() || y.is_identity()) continue;
        // Refresh the pool occasionally so the search is not trapped.
        if (attempt % 97 == 96) pool[pick_pool(rng)] = random_element();
        try {
            PermGroup cand(g.degree(), {x, y});
            if (matches(cand)) return cand;
            if (cand.order() < target_order) {
                PermGroup cand3(g.degree(), {x, y, pool[pick_pool(rng)]});
                if (matches(cand3)) return cand3;
            }
        } catch (const std::length_error&) {
            // order guard tripped on a too-large closure; resample
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Text IO

PermGroup read_generators(std::istream& in) {
    std::string line;
    int degree = -1;
    std::vector<Permutation> gens;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        if (degree < 0) {
            std::string kw;
            if (!(ls >> kw)) continue;  // blank/comment line before header
            if (kw != "degree" || !(ls >> degree) || degree <= 0)
                throw std::runtime_error(
                    "generator file: expected 'degree n' header");
            continue;
        }
        std::vector<int> img;
        int x;
        while (ls >> x) img.push_back(x - 1);
        if (img.empty()) continue;
        if (static_cast<int>(img.size()) != degree)
            throw std::runtime_error(
                "generator file: row length does not match degree");
        gens.push_back(Permutation(std::move(img)));
    }
    if (degree < 0)
        throw std::runtime_error("generator file: missing 'degree n' header");
    return PermGroup(degree, std::move(gens));
}

PermGroup read_generators_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open generator file: " + path);
    return read_generators(in);
}

void write_generators(std::ostream& out, const PermGroup& g) {
    out << "degree " << g.degree() << "\n";
    for (const auto& p : g.generators()) {
        for (int i = 0; i < g.degree(); ++i) {
            if (i) out << ' ';
            out << p[i] + 1;
        }
        out << "\n";
    }
}

void write_generators_file(const std::string& path, const PermGroup& g) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write generator file: " + path);
    write_generators(out, g);
}

}  // namespace flagsieve
