#include "flagsieve/sieve.hpp"

#include <stdexcept>

namespace flagsieve {

std::optional<Integer> lambda_from(const Integer& v, const Integer& k) {
    if (v < 3 || k <= 2 || k >= v - 1)
        throw std::invalid_argument("lambda_from: need v >= 3, 2 < k < v-1");
    Integer num = k * (k - 1);
    if (num % (v - 1) != 0) return std::nullopt;
    return num / (v - 1);
}

bool basic_check(const DesignParams& p) {
    if (p.v <= 0 || p.k <= 0 || p.lambda <= 0) return false;
    if (p.k * (p.k - 1) != p.lambda * (p.v - 1)) return false;
    if (!is_perfect_square(4 * p.lambda * (p.v - 1) + 1)) return false;
    return p.lambda * p.v < p.k * p.k;
}

std::vector<DesignParams> k_candidates(const Integer& v,
                                       const Factorization& k_bound) {
    if (v < 7) throw std::invalid_argument("k_candidates: v must be >= 7");
    std::vector<DesignParams> out;
    for (const Integer& k : divisors(k_bound)) {
        if (k <= 2 || k >= v - 1) continue;
        auto lambda = lambda_from(v, k);
        if (!lambda) continue;
        DesignParams p{v, k, *lambda};
        if (basic_check(p)) out.push_back(std::move(p));
    }
    return out;
}

std::vector<DesignParams> k_candidates(const Integer& v,
                                       const Integer& k_bound) {
    if (k_bound < 3) throw std::invalid_argument("k_candidates: k_bound < 3");
    return k_candidates(v, factorize(k_bound));
}

std::vector<DesignParams> subdegree_filter(std::vector<DesignParams> cands,
                                           const Integer& d) {
    if (d < 1) throw std::invalid_argument("subdegree_filter: d must be >= 1");
    std::erase_if(cands,
                  [&](const DesignParams& p) { return p.lambda * d % p.k != 0; });
    return cands;
}

std::vector<DesignParams> parabolic_power_filter(std::vector<DesignParams> cands,
                                                 const Integer& p,
                                                 const Integer& v) {
    Integer power = ipow(p, p_valuation(p, v - 1));
    std::erase_if(cands, [&](const DesignParams& c) {
        return c.lambda * power % c.k != 0;
    });
    return cands;
}

std::vector<DesignParams> tits_filter(std::vector<DesignParams> cands,
                                      const Integer& p, const Integer& v,
                                      bool is_parabolic, bool p_odd) {
    if (is_parabolic || !p_odd) return cands;
    if ((v - 1) % p == 0) return {};
    return cands;
}

std::vector<DesignParams> index_divisibility_filter(
    std::vector<DesignParams> cands, const std::vector<Integer>& indices) {
    if (indices.empty())
        throw std::invalid_argument("index_divisibility_filter: no indices");
    std::erase_if(cands, [&](const DesignParams& p) {
        for (const auto& idx : indices)
            if (p.k % idx == 0) return false;
        return true;
    });
    return cands;
}

}  // namespace flagsieve
