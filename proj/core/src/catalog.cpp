#include "flagsieve/catalog.hpp"

#include <sstream>
#include <stdexcept>

namespace flagsieve {

Integer su_numerator(int n, const Integer& q) {
    Integer o = ipow(q, n * (n - 1) / 2);
    for (int i = 2; i <= n; ++i) o *= ipow(q, i) - ((i % 2 == 0) ? 1 : -1);
    return o;
}

Integer psu_order(int n, const Integer& q) {
    if (n < 3 || n > 5)
        throw std::invalid_argument("psu_order: n must be 3, 4 or 5");
    Integer p;
    unsigned a;
    if (!is_prime_power(q, p, a))
        throw std::invalid_argument("psu_order: q must be a prime power");
    return su_numerator(n, q) / gcd(Integer(n), q + 1);
}

Integer out_order(const Integer& q) {
    Integer p;
    unsigned a;
    if (!is_prime_power(q, p, a))
        throw std::invalid_argument("out_order: q must be a prime power");
    return 2 * a * gcd(Integer(5), q + 1);
}

namespace {

// q = q0^r with r an odd prime (smallest such r), if any.
std::optional<std::pair<Integer, Integer>> subfield_decomposition(
    const Integer& p, unsigned a) {
    for (unsigned r = 3; r <= a; r += 2) {
        if (!is_prime(Integer(r)) || a % r != 0) continue;
        return std::make_pair(ipow(p, a / r), Integer(r));
    }
    return std::nullopt;
}

}  // namespace

std::vector<FamilyContext> families(const Integer& q) {
    Integer p;
    unsigned a;
    if (q < 2 || !is_prime_power(q, p, a))
        throw std::invalid_argument("families: q must be a prime power >= 2");
    const Integer N = su_numerator(5, q);
    const Integer g5 = gcd(Integer(5), q + 1);
    const Integer socle = N / g5;
    const Integer out = 2 * a * g5;

    std::vector<FamilyContext> out_ctx;
    auto base = [&](int line) {
        FamilyContext c;
        c.family_line = line;
        c.q = q;
        c.p = p;
        c.a = a;
        c.socle_order = socle;
        c.out_order = out;
        return c;
    };
    auto finish = [&](FamilyContext c, Integer v) {
        if ((2 * a * N) % v != 0)
            throw std::logic_error("families: k-bound not integral at line " +
                                   std::to_string(c.family_line));
        if (N % (g5 * v) != 0)
            throw std::logic_error("families: |H0| not integral at line " +
                                   std::to_string(c.family_line));
        c.v = v;
        c.k_bound = 2 * a * N / v;
        c.valid = true;
        out_ctx.push_back(std::move(c));
    };
    auto invalid = [&](FamilyContext c, std::string cond) {
        c.condition = std::move(cond);
        c.valid = false;
        out_ctx.push_back(std::move(c));
    };

    {  // line 1: stabilizer of an isotropic point (parabolic)
        auto c = base(1);
        c.is_parabolic = true;
        finish(std::move(c), (ipow(q, 5) + 1) * (q * q + 1));
    }
    {  // line 2: stabilizer of an isotropic line (parabolic)
        auto c = base(2);
        c.is_parabolic = true;
        finish(std::move(c), (ipow(q, 5) + 1) * (ipow(q, 3) + 1));
    }
    {  // line 3: nonsingular-point stabilizer
        auto c = base(3);
        c.subdegree_divisors = {(q + 1) * (ipow(q, 4) - 1)};
        finish(std::move(c), ipow(q, 4) * (ipow(q, 4) - ipow(q, 3) + q * q - q + 1));
    }
    {  // line 4: nondegenerate-plane stabilizer
        auto c = base(4);
        c.subdegree_divisors = {(q * q - 1) * (ipow(q, 3) + 1)};
        finish(std::move(c),
               ipow(q, 6) * (ipow(q, 4) - ipow(q, 3) + q * q - q + 1) * (q * q + 1));
    }
    {  // line 5: imprimitive wreath-type stabilizer
        auto c = base(5);
        Integer den = Integer(120) * ipow(q + 1, 4);
        if (N % den != 0)
            throw std::logic_error("families: line 5 index not integral");
        finish(std::move(c), N / den);
    }
    {  // line 6: torus normalizer, needs q >= 3
        auto c = base(6);
        c.condition = "q >= 3";
        if (q >= 3)
            finish(std::move(c), ipow(q, 10) * (ipow(q, 4) - 1) *
                                     (ipow(q, 3) + 1) * (q * q - 1) * (q + 1) / 5);
        else
            invalid(std::move(c), "q >= 3");
    }
    {  // line 7: subfield subgroup, needs q = q0^r with r an odd prime
        auto c = base(7);
        c.condition = "q = q0^r, r odd prime";
        auto dec = subfield_decomposition(p, a);
        if (dec) {
            c.q0 = dec->first;
            c.r = dec->second;
            Integer b = gcd((q + 1) / (c.q0 + 1), Integer(5));
            Integer N0 = su_numerator(5, c.q0);
            if (N % (N0 * b) != 0)
                throw std::logic_error("families: line 7 index not integral");
            finish(std::move(c), N / (N0 * b));
        } else {
            invalid(std::move(c), "q = q0^r, r odd prime");
        }
    }
    {  // line 8: orthogonal subgroup, needs q odd
        auto c = base(8);
        c.condition = "q odd";
        if (p != 2)
            finish(std::move(c), ipow(q, 6) * (ipow(q, 5) + 1) * (ipow(q, 3) + 1));
        else
            invalid(std::move(c), "q odd");
    }
    {  // line 9: extraspecial normalizer
        auto c = base(9);
        c.condition = "q = p = 4 mod 5, or q = p^2 with p = 2,3 mod 5";
        bool ok = (a == 1 && p % 5 == 4) ||
                  (a == 2 && (p % 5 == 2 || p % 5 == 3));
        if (ok)
            finish(std::move(c), N / (g5 * 15000));
        else
            invalid(std::move(c), c.condition);
    }
    {  // line 10: PSL_2(11)
        auto c = base(10);
        c.condition = "q = p = 2,6,7,8,10 mod 11";
        Integer m = p % 11;
        bool ok = a == 1 && (m == 2 || m == 6 || m == 7 || m == 8 || m == 10);
        if (ok)
            finish(std::move(c), N / (g5 * 660));
        else
            invalid(std::move(c), c.condition);
    }
    {  // line 11: PSU_4(2)
        auto c = base(11);
        c.condition = "q = p = 5 mod 6";
        if (a == 1 && p % 6 == 5)
            finish(std::move(c), N / (g5 * 25920));
        else
            invalid(std::move(c), c.condition);
    }
    return out_ctx;
}

std::vector<CatalogEntry> builtin_catalog() {
    std::vector<CatalogEntry> cat;
    {
        CatalogEntry e;
        e.group_name = "PSU3(3)";
        e.degree = 28;
        e.generator_file = "u33_d28.gens";
        e.expected_order = 6048;
        e.out_factor = 2;
        e.stabilizers = {
            {"PSL2(7)", 168, 36, {1, 2, 3, 4, 7}, 7},
            {"4.S4", 96, 63, {}, 0},
            {"4^2:S3", 96, 63, {}, 0},
        };
        cat.push_back(std::move(e));
    }
    {
        CatalogEntry e;
        e.group_name = "PSU3(3)";
        e.degree = 63;
        e.generator_file = "u33_d63.gens";
        e.expected_order = 6048;
        e.out_factor = 2;
        e.stabilizers = {{"4.S4", 96, 63, {}, 0}};
        cat.push_back(std::move(e));
    }
    {
        CatalogEntry e;
        e.group_name = "PSU4(2)";
        e.degree = 45;
        e.generator_file = "u42_d45.gens";
        e.expected_order = 25920;
        e.out_factor = 2;
        e.stabilizers = {
            {"S6", 720, 36, {1, 2, 3, 4, 5, 6}, 3},
            {"3^(1+2):2A4", 648, 40, {}, 0},
            {"3^3:S4", 648, 40, {}, 0},
            {"2.(A4xA4).2", 576, 45, {}, 0},
        };
        cat.push_back(std::move(e));
    }
    {
        CatalogEntry e;
        e.group_name = "PSU4(2)";
        e.degree = 40;
        e.generator_file = "u42_d40.gens";
        e.expected_order = 25920;
        e.out_factor = 2;
        e.stabilizers = {{"3^(1+2):2A4", 648, 40, {}, 0}};
        cat.push_back(std::move(e));
    }
    return cat;
}

std::string render_catalog(const std::vector<CatalogEntry>& entries) {
    std::ostringstream out;
    out << "# name degree order file stab_order expected_v\n";
    for (const auto& e : entries)
        for (const auto& s : e.stabilizers)
            out << e.group_name << ' ' << e.degree << ' ' << e.expected_order
                << ' ' << e.generator_file << ' ' << s.order << ' '
                << s.expected_v << "\n";
    return out.str();
}

std::vector<CatalogEntry> parse_catalog(const std::string& text) {
    std::vector<CatalogEntry> entries;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string name, file, order_s, stab_s, v_s;
        int degree;
        if (!(ls >> name)) continue;
        if (!(ls >> degree >> order_s >> file >> stab_s >> v_s))
            throw std::runtime_error("catalog line " + std::to_string(lineno) +
                                     ": expected 6 fields");
        StabilizerInfo stab;
        stab.name = "stab" + stab_s;
        stab.order = Integer(stab_s);
        stab.expected_v = Integer(v_s);
        CatalogEntry* entry = nullptr;
        if (!entries.empty() && entries.back().group_name == name &&
            entries.back().degree == degree &&
            entries.back().generator_file == file)
            entry = &entries.back();
        if (!entry) {
            entries.push_back({name, degree, file, Integer(order_s), 2, {}});
            entry = &entries.back();
        }
        entry->stabilizers.push_back(std::move(stab));
    }
    return entries;
}

}  // namespace flagsieve
