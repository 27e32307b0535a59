#include "flagsieve/construct.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <stdexcept>

#include "flagsieve/catalog.hpp"
#include "flagsieve/sieve.hpp"

namespace flagsieve {

DesignCertificate ConstructedDesign::certificate() const {
    DesignCertificate c;
    c.params = params;
    c.flag_transitive = ft_socle || ft_extension;
    c.point_primitive = primitive;
    c.group_order = ft_socle ? socle_order : 2 * socle_order;
    c.stabilizer_order = c.group_order / params.v;
    return c;
}

namespace {

// Conjugation action of X on the conjugates of a self-normalizing subgroup
// H; equivalent to the coset action but extends directly to any element of
// <X, sigma> that stabilizes the conjugacy class.
class SubgroupAction {
  public:
    SubgroupAction(const PermGroup& x, const PermGroup& h) {
        elems_ = h.elements();
        conjugators_.push_back(Permutation(x.degree()));
        index_.emplace(fingerprint(conjugators_[0]), 0);
        for (std::size_t head = 0; head < conjugators_.size(); ++head)
            for (const auto& g : x.generators()) {
                Permutation w = conjugators_[head] * g;
                auto fp = fingerprint(w);
                if (!index_.count(fp)) {
                    index_.emplace(std::move(fp),
                                   static_cast<int>(conjugators_.size()));
                    conjugators_.push_back(std::move(w));
                }
            }
        degree_ = static_cast<int>(conjugators_.size());
        for (const auto& g : x.generators()) gen_images_.push_back(*image_of(g));
    }

    int degree() const { return degree_; }
    const std::vector<Permutation>& gen_images() const { return gen_images_; }
    PermGroup group() const { return PermGroup(degree_, gen_images_); }

    // Image of y on the conjugate set; nullopt when y moves the class off
    // itself (possible only for y outside X).
    std::optional<Permutation> image_of(const Permutation& y) const {
        std::vector<int> img(degree_);
        for (int i = 0; i < degree_; ++i) {
            auto it = index_.find(fingerprint(conjugators_[i] * y));
            if (it == index_.end()) return std::nullopt;
            img[i] = it->second;
        }
        return Permutation(std::move(img));
    }

  private:
    std::vector<std::uint64_t> fingerprint(const Permutation& w) const {
        std::vector<std::uint64_t> fp;
        fp.reserve(elems_.size());
        for (const auto& e : elems_) fp.push_back(e.conjugate(w).hash());
        std::sort(fp.begin(), fp.end());
        return fp;
    }

    int degree_ = 0;
    std::vector<Permutation> elems_;
    std::vector<Permutation> conjugators_;
    std::map<std::vector<std::uint64_t>, int> index_;
    std::vector<Permutation> gen_images_;
};

using Send = std::function<Permutation(const Permutation&)>;

struct SearchAction {
    std::string group;   // socle name
    std::string name;    // action description
    std::string point_stab_name;
    PermGroup x{1};      // the socle on the action's points
    std::optional<Permutation> sigma;  // extension generator, if it acts
    Integer socle_order;
    // Index-v subgroup classes on the action's points, as (name, image).
    std::vector<std::pair<std::string, PermGroup>> helpers;
};

PermGroup map_group(const Send& send, const PermGroup& sub, int degree) {
    std::vector<Permutation> gens;
    for (const auto& g : sub.generators()) gens.push_back(send(g));
    return PermGroup(degree, std::move(gens));
}

// Monomial subgroup of SU_3(3): norm-1 diagonals of determinant 1 extended
// by coordinate permutations; a 4^2:S_3 of order 96.
PermGroup monomial_u33(const HermitianGeometry& geo) {
    const auto& F = geo.field();
    int t = 3;  // the basis element x of GF(9), a 4th root of unity
    int tinv = F.inv(t);
    FMatrix d1 = {{t, 0, 0}, {0, tinv, 0}, {0, 0, 1}};
    FMatrix d2 = {{1, 0, 0}, {0, t, 0}, {0, 0, tinv}};
    FMatrix cyc = {{0, 1, 0}, {0, 0, 1}, {1, 0, 0}};
    FMatrix swap = {{0, 1, 0}, {2, 0, 0}, {0, 0, 1}};  // det -(2) = 1 mod 3
    std::vector<Permutation> gens;
    for (const auto& M : {d1, d2, cyc, swap}) {
        if (!geo.preserves_form(M) || geo.determinant(M) != 1)
            throw std::logic_error("monomial_u33: matrix not special unitary");
        gens.push_back(geo.matrix_permutation(M));
    }
    PermGroup g(gens.front().degree(), std::move(gens));
    if (g.order() != 96)
        throw std::logic_error("monomial_u33: order " + g.order().str());
    return g;
}

// Monomial subgroup of SU_4(2): 3^3:S_4 of order 648 (all permutation
// matrices have determinant 1 in characteristic 2).
PermGroup monomial_u42(const HermitianGeometry& geo) {
    const auto& F = geo.field();
    int w = 2;  // the basis element x of GF(4), a cube root of unity
    int w2 = F.mul(w, w);
    FMatrix d1 = {{w, 0, 0, 0}, {0, w2, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
    FMatrix d2 = {{1, 0, 0, 0}, {0, w, 0, 0}, {0, 0, w2, 0}, {0, 0, 0, 1}};
    FMatrix d3 = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, w, 0}, {0, 0, 0, w2}};
    FMatrix cyc = {{0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}};
    FMatrix swap = {{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
    std::vector<Permutation> gens;
    for (const auto& M : {d1, d2, d3, cyc, swap}) {
        if (!geo.preserves_form(M) || geo.determinant(M) != 1)
            throw std::logic_error("monomial_u42: matrix not special unitary");
        gens.push_back(geo.matrix_permutation(M));
    }
    PermGroup g(gens.front().degree(), std::move(gens));
    if (g.order() != 648)
        throw std::logic_error("monomial_u42: order " + g.order().str());
    return g;
}

bool preserves_blocks(const IncidenceStructure& d, const Permutation& p) {
    const auto& blocks = d.blocks();
    for (auto b : blocks) {
        std::uint64_t img = 0;
        for (int pt : points_of(b)) img |= std::uint64_t(1) << p[pt];
        if (std::find(blocks.begin(), blocks.end(), img) == blocks.end())
            return false;
    }
    return true;
}

const StabilizerInfo& catalog_stabilizer(const std::string& group,
                                         const std::string& name) {
    static const auto cat = builtin_catalog();
    for (const auto& e : cat)
        if (e.group_name == group)
            for (const auto& s : e.stabilizers)
                if (s.name == name) return s;
    throw std::logic_error("catalog stabilizer not found: " + name);
}

PermGroup searched_subgroup(const PermGroup& g, const std::string& group,
                            const std::string& name, std::uint64_t seed) {
    const auto& info = catalog_stabilizer(group, name);
    std::optional<std::set<Integer>> spectrum;
    if (!info.spectrum.empty()) spectrum = info.spectrum;
    std::uint64_t s = seed ? seed : info.seed;
    auto sub = find_subgroup(g, info.order, spectrum, s);
    if (!sub)
        throw std::runtime_error("subgroup search exhausted for " + name +
                                 " (order " + info.order.str() + ", seed " +
                                 std::to_string(s) + ")");
    return *sub;
}

}  // namespace

ConstructReport construct_all(std::uint64_t seed) {
    ConstructReport rep;
    auto log = [&](std::string s) { rep.log.push_back(std::move(s)); };

    // The two socle groups in their combined natural representations.
    NaturalActions nat33 = natural_actions(3, 3);
    NaturalActions nat42 = natural_actions(4, 2);
    HermitianGeometry geo33(3, 3), geo42(4, 2);
    log("PSU3(3) combined degree 91, order " + nat33.combined.order().str());
    log("PSU4(2) combined degree 85, order " + nat42.combined.order().str());

    // Index-v subgroup classes, on the combined domains.
    PermGroup l27 = searched_subgroup(nat33.combined, "PSU3(3)", "PSL2(7)", seed);
    PermGroup stab4s4 = nat33.combined.stabilizer(nat33.isotropic_count);
    PermGroup mono33 = monomial_u33(geo33);
    PermGroup s6 = searched_subgroup(nat42.combined, "PSU4(2)", "S6", seed);
    PermGroup stab312 = nat42.combined.stabilizer(nat42.isotropic_count);
    PermGroup stab576 = nat42.combined.stabilizer(0);
    PermGroup mono42 = monomial_u42(geo42);
    log("subgroups: PSL2(7)=" + l27.order().str() + " 4.S4=" +
        stab4s4.order().str() + " 4^2:S3=" + mono33.order().str() + " S6=" +
        s6.order().str() + " 3^(1+2):2A4=" + stab312.order().str() +
        " 2.(A4xA4).2=" + stab576.order().str() + " 3^3:S4=" +
        mono42.order().str());

    std::vector<SearchAction> actions;

    auto add_restriction = [&](const NaturalActions& nat, bool isotropic,
                               std::string group, std::string name,
                               std::string stab_name,
                               const std::vector<std::pair<std::string,
                                                           const PermGroup*>>&
                                   helper_subs) {
        SearchAction a;
        a.group = std::move(group);
        a.name = std::move(name);
        a.point_stab_name = std::move(stab_name);
        a.x = isotropic ? nat.isotropic_action() : nat.nonisotropic_action();
        a.sigma = isotropic ? nat.restrict_isotropic(nat.frobenius)
                            : nat.restrict_nonisotropic(nat.frobenius);
        a.socle_order = nat.combined.order();
        Send send = [&nat, isotropic](const Permutation& p) {
            return isotropic ? nat.restrict_isotropic(p)
                             : nat.restrict_nonisotropic(p);
        };
        for (const auto& [hname, sub] : helper_subs)
            a.helpers.emplace_back(hname, map_group(send, *sub, a.x.degree()));
        actions.push_back(std::move(a));
    };

    auto add_conjugation = [&](const NaturalActions& nat, const PermGroup& h,
                               std::string group, std::string name,
                               std::string stab_name,
                               const std::vector<std::pair<std::string,
                                                           const PermGroup*>>&
                                   helper_subs) {
        SubgroupAction conj(nat.combined, h);
        SearchAction a;
        a.group = std::move(group);
        a.name = std::move(name);
        a.point_stab_name = std::move(stab_name);
        a.x = conj.group();
        auto sig = conj.image_of(nat.frobenius);
        if (sig) a.sigma = *sig;
        a.socle_order = nat.combined.order();
        for (const auto& [hname, sub] : helper_subs) {
            std::vector<Permutation> gens;
            for (const auto& g : sub->generators()) {
                auto img = conj.image_of(g);
                if (!img)
                    throw std::logic_error("helper image missing on " + a.name);
                gens.push_back(*img);
            }
            a.helpers.emplace_back(hname,
                                   PermGroup(a.x.degree(), std::move(gens)));
        }
        actions.push_back(std::move(a));
    };

    add_conjugation(nat33, l27, "PSU3(3)", "cosets of PSL2(7), degree 36",
                    "PSL2(7)", {{"PSL2(7)", &l27}});
    add_restriction(nat33, false, "PSU3(3)",
                    "nonisotropic points of the GF(9) plane, degree 63",
                    "4.S4", {{"4.S4", &stab4s4}, {"4^2:S3", &mono33}});
    add_conjugation(nat33, mono33, "PSU3(3)", "cosets of 4^2:S3, degree 63",
                    "4^2:S3", {{"4^2:S3", &mono33}, {"4.S4", &stab4s4}});
    add_conjugation(nat42, s6, "PSU4(2)", "cosets of S6, degree 36", "S6",
                    {{"S6", &s6}});
    add_restriction(nat42, false, "PSU4(2)",
                    "nonisotropic points of the GF(4) space, degree 40",
                    "3^(1+2):2A4",
                    {{"3^(1+2):2A4", &stab312}, {"3^3:S4", &mono42}});
    add_conjugation(nat42, mono42, "PSU4(2)", "cosets of 3^3:S4, degree 40",
                    "3^3:S4", {{"3^3:S4", &mono42}, {"3^(1+2):2A4", &stab312}});
    add_restriction(nat42, true, "PSU4(2)",
                    "isotropic points of the GF(4) space, degree 45",
                    "2.(A4xA4).2", {{"2.(A4xA4).2", &stab576}});

    // Search each action for base blocks at the k's the sieve admits.
    std::vector<ConstructedDesign> all;
    for (const auto& a : actions) {
        const int v = a.x.degree();
        if (a.x.order() != a.socle_order)
            throw std::logic_error("action " + a.name + " is not faithful");
        const Integer stab_order = a.socle_order / v;
        bool primitive = a.x.is_primitive();
        auto ks = k_candidates(Integer(v), 2 * stab_order);
        std::string klist;
        for (const auto& c : ks) klist += " " + c.k.str();
        log("action [" + a.name + "]: primitive=" +
            (primitive ? std::string("yes") : std::string("no")) +
            ", admissible k:" + klist);

        std::vector<ConstructedDesign> here;
        for (const auto& [hname, helper] : a.helpers) {
            for (const auto& cand : ks) {
                int k = cand.k.convert_to<int>();
                for (auto& d : find_base_blocks(a.x, helper, k)) {
                    bool dup = false;
                    for (auto& prev : here)
                        if (prev.design.same_blocks(d)) {
                            dup = true;
                            break;
                        }
                    if (dup) continue;
                    ConstructedDesign cd;
                    cd.group = a.group;
                    cd.action = a.name;
                    cd.point_stabilizer = a.point_stab_name;
                    cd.point_stab_order = stab_order;
                    cd.block_helper = hname;
                    cd.params = std::get<DesignParams>(d.verify_symmetric());
                    cd.design = std::move(d);
                    cd.primitive = primitive;
                    cd.socle_order = a.socle_order;
                    cd.ft_socle = flag_transitive(cd.design, a.x);
                    cd.ft_extension = false;
                    if (a.sigma && preserves_blocks(cd.design, *a.sigma)) {
                        auto gens = a.x.generators();
                        gens.push_back(*a.sigma);
                        PermGroup x2(v, std::move(gens));
                        cd.ft_extension = flag_transitive(cd.design, x2);
                    }
                    here.push_back(std::move(cd));
                }
            }
        }
        for (auto& cd : here) {
            log("  design (" + cd.params.v.str() + "," + cd.params.k.str() +
                "," + cd.params.lambda.str() + ") from " + cd.block_helper +
                "-orbits: ft_socle=" + (cd.ft_socle ? "yes" : "no") +
                " ft_ext=" + (cd.ft_extension ? "yes" : "no"));
            all.push_back(std::move(cd));
        }
    }

    // Keep the theorem's designs: flag-transitive under the socle or its
    // extension, and point-primitive.
    for (auto& cd : all)
        if ((cd.ft_socle || cd.ft_extension) && cd.primitive)
            rep.designs.push_back(std::move(cd));

    // Deterministic ids.
    std::map<std::string, char> suffix;
    for (auto& cd : rep.designs) {
        std::string stem = cd.group + "-" + cd.params.v.str() + "-" +
                           cd.params.k.str() + "-" + cd.params.lambda.str();
        char& c = suffix.try_emplace(stem, 'a').first->second;
        cd.id = stem + "-" + c;
        ++c;
    }

    // Isomorphism classes (union-find over pairwise tests).
    const std::size_t n = rep.designs.size();
    std::vector<std::size_t> root(n);
    for (std::size_t i = 0; i < n; ++i) root[i] = i;
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        return root[x] == x ? x : root[x] = find(root[x]);
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (rep.designs[i].params != rep.designs[j].params) continue;
            if (find(i) == find(j)) continue;
            auto iso = isomorphic(rep.designs[i].design, rep.designs[j].design);
            if (iso.isomorphic) {
                root[find(j)] = find(i);
                rep.witnesses.push_back({i, j, iso.witness});
            }
        }
    std::map<std::size_t, std::vector<std::size_t>> classes;
    for (std::size_t i = 0; i < n; ++i) classes[find(i)].push_back(i);
    for (auto& [r, members] : classes) rep.iso_classes.push_back(members);

    for (const auto& cd : rep.designs) rep.lambda_set.insert(cd.params.lambda);

    // Identify the PG(3,3)-complement class.
    IncidenceStructure pgc = pg3_design(3).complement();
    for (std::size_t c = 0; c < rep.iso_classes.size(); ++c) {
        const auto& cd = rep.designs[rep.iso_classes[c][0]];
        if (cd.params != DesignParams{40, 27, 18}) continue;
        auto iso = isomorphic(cd.design, pgc);
        if (iso.isomorphic) {
            if (rep.pg_complement_class >= 0)
                throw std::logic_error(
                    "two classes match the PG(3,3) complement");
            rep.pg_complement_class = static_cast<int>(c);
            rep.pg_witness = iso.witness;
        }
    }
    log("isomorphism classes: " + std::to_string(rep.iso_classes.size()));
    return rep;
}

void write_catalog_data(const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    NaturalActions nat33 = natural_actions(3, 3);
    NaturalActions nat42 = natural_actions(4, 2);
    write_generators_file(dir + "/u33_d28.gens", nat33.isotropic_action());
    write_generators_file(dir + "/u33_d63.gens", nat33.nonisotropic_action());
    write_generators_file(dir + "/u42_d45.gens", nat42.isotropic_action());
    write_generators_file(dir + "/u42_d40.gens", nat42.nonisotropic_action());
    std::ofstream cat(dir + "/catalog.txt");
    if (!cat) throw std::runtime_error("cannot write " + dir + "/catalog.txt");
    cat << render_catalog(builtin_catalog());
}

}  // namespace flagsieve
