#ifndef KVV_SEARCH_HPP
#define KVV_SEARCH_HPP

// Exploratory searches. Their results are not part of any certified output.

#include <set>
#include <string>
#include <vector>

#include "kvv/riemann_roch.hpp"

namespace kvv {

/// Relative boundaries supported on contracted curves, coefficients j/q in
/// (0, 1) with q <= max_denominator, that make floor_cls - pullback(K_T) - boundary
/// relatively nef. Returns every hit of the smallest support size that has one.
inline std::vector<Divisor> search_relative_boundaries(const ContractionModel& c, const ClassVector& floor_cls,
                                                       int max_denominator = 2, std::size_t max_support = 1) {
    const auto& s = c.source();
    ClassVector base = floor_cls;
    const ClassVector kt = canonical_pullback(c);
    for (std::size_t i = 0; i < base.size(); ++i) base[i] -= kt[i];
    if (relative_nef_report(c, base).nef) return {Divisor{}};

    std::set<Rational> values;
    for (int q = 2; q <= max_denominator; ++q)
        for (int j = 1; j < q; ++j) values.insert(Rational(j) / Rational(q));
    const std::vector<Rational> coeffs(values.begin(), values.end());
    const auto& names = c.contracted();

    for (std::size_t support = 1; support <= max_support && support <= names.size(); ++support) {
        std::vector<Divisor> hits;
        std::vector<std::size_t> pick(support);
        for (std::size_t i = 0; i < support; ++i) pick[i] = i;
        while (true) {
            std::vector<std::size_t> digit(support, 0);
            while (true) {
                Divisor d;
                for (std::size_t i = 0; i < support; ++i) d.add(names[pick[i]], coeffs[digit[i]]);
                ClassVector shifted = base;
                const ClassVector dc = s.divisor_class(d);
                for (std::size_t i = 0; i < shifted.size(); ++i) shifted[i] -= dc[i];
                if (relative_nef_report(c, shifted).nef) hits.push_back(d);
                std::size_t k = 0;
                while (k < support && ++digit[k] == coeffs.size()) digit[k++] = 0;
                if (k == support) break;
            }
            // next combination
            std::size_t i = support;
            while (i > 0 && pick[i - 1] == names.size() - support + i - 1) --i;
            if (i == 0) break;
            ++pick[i - 1];
            for (std::size_t j = i; j < support; ++j) pick[j] = pick[j - 1] + 1;
        }
        if (!hits.empty()) return hits;
    }
    return {};
}

struct WitnessCandidate {
    Divisor ample_candidate;
    Divisor boundary;
    Rational chi;
    Verdict verdict;
};

/// Integer combinations of the given strict curves with coefficients in
/// [-range, range] that are ample on a rank-one target, each run through the
/// witness pipeline with the first boundary the boundary search finds.
inline std::vector<WitnessCandidate> search_witness_divisors(const ContractionModel& c,
                                                             const std::vector<std::string>& generators,
                                                             const Divisor& ample_witness, int range = 1,
                                                             int max_denominator = 2, std::size_t max_support = 1) {
    require_rank_one(c);
    std::vector<WitnessCandidate> out;
    const std::size_t k = generators.size();
    std::vector<int> n(k, -range);
    if (k == 0) return out;
    while (true) {
        Divisor a;
        for (std::size_t i = 0; i < k; ++i) a.add(generators[i], Rational(n[i]));
        if (!a.empty() && ample_check_rank_one(c, a, ample_witness) > 0) {
            const auto& s = c.source();
            const Divisor fl = s.floor_divisor(pullback(c, -a).total);
            const auto boundaries = search_relative_boundaries(c, s.divisor_class(fl), max_denominator, max_support);
            const Divisor bnd = boundaries.empty() ? Divisor{} : boundaries.front();
            const WitnessReport r = run_witness_pipeline(c, {a, ample_witness, bnd});
            out.push_back({a, bnd, r.chi, r.verdict});
        }
        std::size_t i = 0;
        while (i < k && ++n[i] > range) n[i++] = -range;
        if (i == k) break;
    }
    return out;
}

} // namespace kvv

#endif // KVV_SEARCH_HPP
