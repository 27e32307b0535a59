#include "flagsieve/design.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace flagsieve {

std::uint64_t mask_of(const std::vector<int>& points) {
    std::uint64_t m = 0;
    for (int p : points) {
        if (p < 0 || p >= 64) throw std::invalid_argument("point out of range");
        m |= std::uint64_t(1) << p;
    }
    return m;
}

std::vector<int> points_of(std::uint64_t mask) {
    std::vector<int> pts;
    while (mask) {
        int p = std::countr_zero(mask);
        pts.push_back(p);
        mask &= mask - 1;
    }
    return pts;
}

IncidenceStructure::IncidenceStructure(int v, std::vector<std::uint64_t> blocks)
    : v_(v), blocks_(std::move(blocks)) {
    if (v < 1 || v > 64)
        throw std::invalid_argument("IncidenceStructure: v must be in [1,64]");
    std::uint64_t full =
        (v == 64) ? ~std::uint64_t(0) : ((std::uint64_t(1) << v) - 1);
    for (auto b : blocks_)
        if (b & ~full)
            throw std::invalid_argument("IncidenceStructure: block point > v");
}

std::vector<std::vector<int>> IncidenceStructure::block_lists() const {
    std::vector<std::vector<int>> out;
    out.reserve(blocks_.size());
    for (auto b : blocks_) out.push_back(points_of(b));
    return out;
}

std::variant<DesignParams, DesignFailure> IncidenceStructure::verify_symmetric()
    const {
    if (static_cast<int>(blocks_.size()) != v_)
        return DesignFailure{"block-count",
                             std::to_string(blocks_.size()) + " blocks, v=" +
                                 std::to_string(v_)};
    const int k = std::popcount(blocks_[0]);
    for (std::size_t i = 1; i < blocks_.size(); ++i)
        if (std::popcount(blocks_[i]) != k)
            return DesignFailure{"block-size", "block " + std::to_string(i + 1)};
    for (int p = 0; p < v_; ++p) {
        int r = 0;
        for (auto b : blocks_)
            if (b >> p & 1) ++r;
        if (r != k)
            return DesignFailure{"replication", "point " + std::to_string(p + 1)};
    }
    int lambda = -1;
    for (int p = 0; p < v_; ++p)
        for (int r = p + 1; r < v_; ++r) {
            int c = 0;
            for (auto b : blocks_)
                if ((b >> p & 1) && (b >> r & 1)) ++c;
            if (lambda < 0) lambda = c;
            if (c != lambda)
                return DesignFailure{"pair-coverage",
                                     "pair (" + std::to_string(p + 1) + "," +
                                         std::to_string(r + 1) + ")"};
        }
    for (std::size_t i = 0; i < blocks_.size(); ++i)
        for (std::size_t j = i + 1; j < blocks_.size(); ++j)
            if (std::popcount(blocks_[i] & blocks_[j]) != lambda)
                return DesignFailure{"block-intersection",
                                     "blocks (" + std::to_string(i + 1) + "," +
                                         std::to_string(j + 1) + ")"};
    return DesignParams{v_, k, lambda};
}

IncidenceStructure IncidenceStructure::complement() const {
    std::uint64_t full =
        (v_ == 64) ? ~std::uint64_t(0) : ((std::uint64_t(1) << v_) - 1);
    std::vector<std::uint64_t> blocks;
    blocks.reserve(blocks_.size());
    for (auto b : blocks_) blocks.push_back(full ^ b);
    return IncidenceStructure(v_, std::move(blocks));
}

void IncidenceStructure::canonicalize() {
    std::sort(blocks_.begin(), blocks_.end());
}

bool IncidenceStructure::same_blocks(const IncidenceStructure& other) const {
    if (v_ != other.v_) return false;
    auto a = blocks_, b = other.blocks_;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

namespace {

std::uint64_t apply_to_mask(const Permutation& p, std::uint64_t mask) {
    std::uint64_t out = 0;
    while (mask) {
        int pt = std::countr_zero(mask);
        out |= std::uint64_t(1) << p[pt];
        mask &= mask - 1;
    }
    return out;
}

}  // namespace

std::variant<IncidenceStructure, BaseBlockError> from_base_block(
    const PermGroup& action, std::uint64_t block) {
    const int v = action.degree();
    std::set<std::uint64_t> seen{block};
    std::vector<std::uint64_t> orbit{block};
    for (std::size_t head = 0; head < orbit.size(); ++head) {
        for (const auto& g : action.generators()) {
            std::uint64_t img = apply_to_mask(g, orbit[head]);
            if (seen.insert(img).second) {
                orbit.push_back(img);
                if (orbit.size() > static_cast<std::size_t>(v))
                    return BaseBlockError{"block orbit exceeds degree",
                                          orbit.size()};
            }
        }
    }
    if (orbit.size() != static_cast<std::size_t>(v))
        return BaseBlockError{"block orbit length " +
                                  std::to_string(orbit.size()) +
                                  " differs from degree " + std::to_string(v),
                              orbit.size()};
    IncidenceStructure d(v, std::move(orbit));
    d.canonicalize();
    return d;
}

std::vector<IncidenceStructure> find_base_blocks(const PermGroup& action,
                                                 const PermGroup& helper,
                                                 int k) {
    const int v = action.degree();
    std::vector<IncidenceStructure> found;
    if (k <= 2 || k >= v - 1) return found;  // nontrivial designs only

    auto orbits = helper.orbits();
    std::vector<std::uint64_t> omasks;
    std::vector<int> osizes;
    for (const auto& orb : orbits) {
        omasks.push_back(mask_of(orb));
        osizes.push_back(static_cast<int>(orb.size()));
    }
    const int m = static_cast<int>(omasks.size());

    std::vector<std::uint64_t> unions;
    // DFS over orbit subsets with exact size k.
    auto dfs = [&](auto&& self, int idx, int remaining,
                   std::uint64_t acc) -> void {
        if (remaining == 0) {
            unions.push_back(acc);
            return;
        }
        if (idx == m) return;
        int tail = 0;
        for (int i = idx; i < m; ++i) tail += osizes[i];
        if (tail < remaining) return;
        if (osizes[idx] <= remaining)
            self(self, idx + 1, remaining - osizes[idx], acc | omasks[idx]);
        self(self, idx + 1, remaining, acc);
    };
    dfs(dfs, 0, k, 0);

    for (auto u : unions) {
        auto r = from_base_block(action, u);
        if (!std::holds_alternative<IncidenceStructure>(r)) continue;
        auto& d = std::get<IncidenceStructure>(r);
        if (!std::holds_alternative<DesignParams>(d.verify_symmetric()))
            continue;
        bool dup = false;
        for (const auto& prev : found)
            if (prev.same_blocks(d)) {
                dup = true;
                break;
            }
        if (!dup) found.push_back(std::move(d));
    }
    return found;
}

bool flag_transitive(const IncidenceStructure& d, const PermGroup& g) {
    if (g.degree() != d.v())
        throw std::invalid_argument("flag_transitive: degree mismatch");
    const auto& blocks = d.blocks();
    const int nb = static_cast<int>(blocks.size());

    // Every generator must permute the block set.
    std::vector<std::vector<int>> block_images;  // per generator
    for (std::size_t gi = 0; gi < g.generators().size(); ++gi) {
        const auto& gen = g.generators()[gi];
        std::vector<int> bimg(nb, -1);
        for (int b = 0; b < nb; ++b) {
            std::uint64_t img = apply_to_mask(gen, blocks[b]);
            auto it = std::find(blocks.begin(), blocks.end(), img);
            if (it == blocks.end())
                throw std::invalid_argument(
                    "flag_transitive: generator " + std::to_string(gi + 1) +
                    " does not map block " + std::to_string(b + 1) +
                    " into the block set");
            bimg[b] = static_cast<int>(it - blocks.begin());
        }
        block_images.push_back(std::move(bimg));
    }

    // Orbit of one flag under the induced action on (point, block) pairs.
    std::vector<std::pair<int, int>> flags;
    for (int b = 0; b < nb; ++b)
        for (int p : points_of(blocks[b])) flags.emplace_back(p, b);
    if (flags.empty()) return true;

    std::set<std::pair<int, int>> seen{flags[0]};
    std::vector<std::pair<int, int>> orbit{flags[0]};
    for (std::size_t head = 0; head < orbit.size(); ++head) {
        auto [p, b] = orbit[head];
        for (std::size_t gi = 0; gi < g.generators().size(); ++gi) {
            std::pair<int, int> img{g.generators()[gi][p],
                                    block_images[gi][b]};
            if (seen.insert(img).second) orbit.push_back(img);
        }
    }
    return orbit.size() == flags.size();
}

std::vector<int> triple_intersection_fingerprint(const IncidenceStructure& d) {
    const auto& b = d.blocks();
    std::vector<int> fp;
    fp.reserve(b.size() * (b.size() - 1) * (b.size() - 2) / 6);
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = i + 1; j < b.size(); ++j) {
            std::uint64_t ij = b[i] & b[j];
            for (std::size_t l = j + 1; l < b.size(); ++l)
                fp.push_back(std::popcount(ij & b[l]));
        }
    std::sort(fp.begin(), fp.end());
    return fp;
}

namespace {

struct IsoSearch {
    const std::vector<std::uint64_t>& b1;
    const std::vector<std::uint64_t>& b2;
    int v;
    std::uint64_t budget;
    std::uint64_t nodes = 0;
    std::vector<int> map;        // point of d1 -> point of d2 (-1 unset)
    std::uint64_t used = 0;      // d2 points already hit
    std::vector<std::uint64_t> possible;  // per d1 block: candidate d2 blocks

    IsoSearch(const IncidenceStructure& d1, const IncidenceStructure& d2,
              std::uint64_t budget)
        : b1(d1.blocks()), b2(d2.blocks()), v(d1.v()), budget(budget) {
        map.assign(v, -1);
        possible.assign(b1.size(), (b1.size() == 64)
                                       ? ~std::uint64_t(0)
                                       : (std::uint64_t(1) << b1.size()) - 1);
    }

    bool assign(int p1, int p2, std::vector<std::uint64_t>& saved) {
        saved = possible;
        map[p1] = p2;
        used |= std::uint64_t(1) << p2;
        // Blocks through p1 must go to blocks through p2, and dually.
        std::uint64_t through2 = 0;
        for (std::size_t j = 0; j < b2.size(); ++j)
            if (b2[j] >> p2 & 1) through2 |= std::uint64_t(1) << j;
        for (std::size_t i = 0; i < b1.size(); ++i) {
            if (b1[i] >> p1 & 1)
                possible[i] &= through2;
            else
                possible[i] &= ~through2;
            if (!possible[i]) return false;
        }
        return true;
    }

    void undo(int p1, int p2, std::vector<std::uint64_t>& saved) {
        map[p1] = -1;
        used &= ~(std::uint64_t(1) << p2);
        possible = saved;
    }

    bool run(int p1) {
        if (p1 == v) return true;
        if (++nodes > budget)
            throw std::length_error("isomorphic: node budget exceeded");
        for (int p2 = 0; p2 < v; ++p2) {
            if (used >> p2 & 1) continue;
            std::vector<std::uint64_t> saved;
            if (assign(p1, p2, saved)) {
                if (run(p1 + 1)) return true;
            }
            undo(p1, p2, saved);
        }
        return false;
    }
};

}  // namespace

IsoResult isomorphic(const IncidenceStructure& d1, const IncidenceStructure& d2,
                     std::uint64_t node_budget) {
    IsoResult res;
    auto v1 = d1.verify_symmetric(), v2 = d2.verify_symmetric();
    if (!std::holds_alternative<DesignParams>(v1) ||
        !std::holds_alternative<DesignParams>(v2))
        throw std::invalid_argument("isomorphic: inputs must verify");
    if (std::get<DesignParams>(v1) != std::get<DesignParams>(v2)) {
        res.exhausted = true;
        return res;
    }
    if (d1.same_blocks(d2)) {
        res.isomorphic = true;
        res.exhausted = true;
        res.witness.resize(d1.v());
        for (int i = 0; i < d1.v(); ++i) res.witness[i] = i;
        return res;
    }
    if (triple_intersection_fingerprint(d1) !=
        triple_intersection_fingerprint(d2)) {
        res.exhausted = true;  // invariant mismatch is a proof
        return res;
    }

    IsoSearch search(d1, d2, node_budget);
    bool hit = search.run(0);
    res.nodes = search.nodes;
    if (hit) {
        res.isomorphic = true;
        res.witness = search.map;
        // Confidence check: the witness must map blocks onto blocks.
        std::vector<int> img = search.map;
        Permutation pi{img};
        for (auto b : d1.blocks()) {
            std::uint64_t m = apply_to_mask(pi, b);
            if (std::find(d2.blocks().begin(), d2.blocks().end(), m) ==
                d2.blocks().end())
                throw std::logic_error("isomorphic: witness failed recheck");
        }
    } else {
        res.exhausted = true;
    }
    return res;
}

IncidenceStructure read_design(std::istream& in) {
    std::string line;
    long v = -1, k = -1, lambda = -1;
    std::vector<std::uint64_t> blocks;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        if (v < 0) {
            if (!(ls >> v >> k >> lambda)) {
                v = -1;
                continue;  // blank line before header
            }
            if (v < 1 || v > 64)
                throw std::runtime_error("design file line " +
                                         std::to_string(lineno) +
                                         ": bad header");
            continue;
        }
        std::vector<int> pts;
        int x;
        while (ls >> x) pts.push_back(x - 1);
        if (pts.empty()) continue;
        if (static_cast<long>(pts.size()) != k)
            throw std::runtime_error("design file line " +
                                     std::to_string(lineno) +
                                     ": block size differs from k");
        for (int p : pts)
            if (p < 0 || p >= v)
                throw std::runtime_error("design file line " +
                                         std::to_string(lineno) +
                                         ": point out of range");
        blocks.push_back(mask_of(pts));
    }
    if (v < 0) throw std::runtime_error("design file: missing header");
    if (static_cast<long>(blocks.size()) != v)
        throw std::runtime_error("design file: expected " + std::to_string(v) +
                                 " blocks, found " +
                                 std::to_string(blocks.size()));
    return IncidenceStructure(static_cast<int>(v), std::move(blocks));
}

IncidenceStructure read_design_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open design file: " + path);
    return read_design(in);
}

void write_design(std::ostream& out, const IncidenceStructure& d) {
    auto params = d.verify_symmetric();
    if (!std::holds_alternative<DesignParams>(params))
        throw std::invalid_argument("write_design: structure does not verify");
    const auto& p = std::get<DesignParams>(params);
    out << p.v << ' ' << p.k << ' ' << p.lambda << "\n";
    for (const auto& pts : d.block_lists()) {
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (i) out << ' ';
            out << pts[i] + 1;
        }
        out << "\n";
    }
}

void write_design_file(const std::string& path, const IncidenceStructure& d) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write design file: " + path);
    write_design(out, d);
}

}  // namespace flagsieve
