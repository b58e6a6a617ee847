#ifndef KVV_CONTRACTION_HPP
#define KVV_CONTRACTION_HPP

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "kvv/lattice.hpp"

namespace kvv {

/// A validated birational contraction of a negative-definite configuration of
/// prime curves. Divisors on the target are represented by their strict
/// transforms on the source.
class ContractionModel {
public:
    ContractionModel(SurfaceModel source, std::vector<std::string> names)
        : source_(std::move(source)), contracted_(std::move(names)) {
        std::set<std::string> seen;
        for (const auto& n : contracted_) {
            const auto& c = source_.curve(n);
            if (!c.is_prime) throw NotContractible("'" + n + "' is not a prime curve");
            if (!seen.insert(n).second) throw NotContractible("'" + n + "' listed twice");
        }
        const std::size_t k = contracted_.size();
        gram_sub_ = QMatrix(k, k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j)
                gram_sub_(i, j) = source_.intersect_curves(contracted_[i], contracted_[j]);
        if (k > 0 && !is_negative_definite(gram_sub_))
            throw NotContractible("intersection matrix of the contracted curves is not negative definite");
        compute_components();
    }

    const SurfaceModel& source() const noexcept { return source_; }
    const std::vector<std::string>& contracted() const noexcept { return contracted_; }
    const QMatrix& gram_sub() const noexcept { return gram_sub_; }
    /// Connected components of the dual graph, as indices into contracted().
    const std::vector<std::vector<std::size_t>>& components() const noexcept { return components_; }

    long target_rank() const {
        return static_cast<long>(source_.rank()) - static_cast<long>(contracted_.size());
    }

    bool contracts(const std::string& name) const {
        return std::find(contracted_.begin(), contracted_.end(), name) != contracted_.end();
    }

    const ClassVector& curve_class(std::size_t i) const { return source_.curve(contracted_[i]).cls; }

    /// Coefficients c with (cls + sum c_i E_i) . E_j = 0 for every contracted E_j.
    QVector orthogonal_correction(const ClassVector& cls) const {
        QVector rhs(contracted_.size());
        for (std::size_t j = 0; j < contracted_.size(); ++j) rhs[j] = -source_.intersect(cls, curve_class(j));
        try {
            return solve_linear(gram_sub_, rhs);
        } catch (const SingularMatrix&) {
            throw InternalError("negative-definite Gram matrix reported singular");
        }
    }

private:
    void compute_components() {
        const std::size_t k = contracted_.size();
        std::vector<int> comp(k, -1);
        for (std::size_t s = 0; s < k; ++s) {
            if (comp[s] >= 0) continue;
            const int id = static_cast<int>(components_.size());
            components_.emplace_back();
            std::vector<std::size_t> stack{s};
            comp[s] = id;
            while (!stack.empty()) {
                const std::size_t v = stack.back();
                stack.pop_back();
                components_[id].push_back(v);
                for (std::size_t w = 0; w < k; ++w)
                    if (w != v && comp[w] < 0 && !gram_sub_(v, w).is_zero()) {
                        comp[w] = id;
                        stack.push_back(w);
                    }
            }
            std::sort(components_[id].begin(), components_[id].end());
        }
    }

    SurfaceModel source_;
    std::vector<std::string> contracted_;
    QMatrix gram_sub_;
    std::vector<std::vector<std::size_t>> components_;
};

inline ContractionModel plan_contraction(const SurfaceModel& s, std::vector<std::string> names) {
    return ContractionModel(s, std::move(names));
}

struct PullbackResult {
    Divisor total;
    std::map<std::string, Rational> exceptional_coefficients;
};

inline void require_strict(const ContractionModel& c, const Divisor& d) {
    for (const auto& [name, _] : d.terms())
        if (c.contracts(name)) throw NotStrictTransform(name);
}

/// Mumford pullback of a Weil divisor on the target given by its strict transform.
inline PullbackResult pullback(const ContractionModel& c, const Divisor& strict) {
    require_strict(c, strict);
    const auto& s = c.source();
    const ClassVector cls = s.divisor_class(strict);
    const QVector coef = c.orthogonal_correction(cls);

    PullbackResult r{strict, {}};
    for (std::size_t i = 0; i < coef.size(); ++i) {
        r.exceptional_coefficients[c.contracted()[i]] = coef[i];
        r.total.add(c.contracted()[i], coef[i]);
    }
    const ClassVector total = s.divisor_class(r.total);
    for (std::size_t j = 0; j < c.contracted().size(); ++j)
        if (!s.intersect(total, c.curve_class(j)).is_zero())
            throw InternalError("pullback is not orthogonal to '" + c.contracted()[j] + "'");
    return r;
}

struct DiscrepancyResult {
    /// a_i in K_source = pullback(K_target) + sum a_i E_i.
    std::map<std::string, Rational> values;
    bool klt = true;
};

inline DiscrepancyResult discrepancies(const ContractionModel& c) {
    // (K - sum a_i E_i) . E_j = 0, i.e. the orthogonal correction of K is -a.
    const QVector corr = c.orthogonal_correction(c.source().canonical());
    DiscrepancyResult r;
    for (std::size_t i = 0; i < corr.size(); ++i) {
        const Rational a = -corr[i];
        r.values[c.contracted()[i]] = a;
        if (a <= Rational(-1)) r.klt = false;
    }
    return r;
}

/// Class of the pullback of the target's canonical divisor.
inline ClassVector canonical_pullback(const ContractionModel& c) {
    const auto& s = c.source();
    ClassVector k = s.canonical();
    const QVector corr = c.orthogonal_correction(k);
    for (std::size_t i = 0; i < corr.size(); ++i) {
        const auto& e = c.curve_class(i);
        for (std::size_t j = 0; j < k.size(); ++j)
            if (!e[j].is_zero()) k[j] += corr[i] * e[j];
    }
    return k;
}

/// Intersection on the target via the projection formula.
inline Rational descend_intersection(const ContractionModel& c, const Divisor& d1, const Divisor& d2) {
    require_strict(c, d2);
    const auto& s = c.source();
    return s.intersect(s.divisor_class(pullback(c, d1).total), s.divisor_class(d2));
}

inline Rational descend_canonical_intersection(const ContractionModel& c, const Divisor& d) {
    require_strict(c, d);
    const auto& s = c.source();
    return s.intersect(canonical_pullback(c), s.divisor_class(d));
}

struct SingularityComponent {
    enum class Kind { A, SingleCurve, SmoothBlowDown, Unclassified };

    Kind kind = Kind::Unclassified;
    int n = 0; ///< chain length for A, minus self-intersection for SingleCurve
    std::vector<std::string> curves;
    QMatrix gram;

    std::string tag() const {
        switch (kind) {
        case Kind::A: return "A" + std::to_string(n);
        case Kind::SingleCurve: return "(" + std::to_string(n) + ")";
        case Kind::SmoothBlowDown: return "smooth";
        case Kind::Unclassified: break;
        }
        return "unclassified";
    }
};

struct SingularityReport {
    std::vector<SingularityComponent> components;

    std::vector<std::string> tags() const {
        std::vector<std::string> t;
        for (const auto& c : components) t.push_back(c.tag());
        return t;
    }
};

/// Types the point obtained from each connected component: A_n for a chain of
/// smooth rational (-2)-curves, (n) for a single smooth rational (-n)-curve with
/// n >= 3, a smooth point for a single (-1)-curve, unclassified otherwise.
inline SingularityReport classify_singularities(const ContractionModel& c) {
    const auto& s = c.source();
    const auto& g = c.gram_sub();
    SingularityReport report;
    for (const auto& comp : c.components()) {
        SingularityComponent out;
        bool rational = true;
        for (std::size_t i : comp)
            if (s.arithmetic_genus(c.curve_class(i)) != Rational(0)) rational = false;

        std::vector<std::size_t> order = comp;
        bool chain = rational;
        if (chain && comp.size() > 1) {
            // Walk from the lowest-index end vertex; each step must meet exactly one new neighbour transversally.
            std::map<std::size_t, std::vector<std::size_t>> nbrs;
            for (std::size_t i : comp)
                for (std::size_t j : comp)
                    if (i != j && !g(i, j).is_zero()) {
                        if (g(i, j) != Rational(1)) chain = false;
                        nbrs[i].push_back(j);
                    }
            constexpr std::size_t none = static_cast<std::size_t>(-1);
            std::size_t ends = 0;
            std::size_t start = none;
            for (std::size_t i : comp) {
                if (nbrs[i].size() > 2) chain = false;
                if (nbrs[i].size() == 1) {
                    ++ends;
                    if (start == none) start = i;
                }
            }
            if (ends != 2) chain = false;
            if (chain) {
                order.clear();
                std::size_t prev = none, cur = start;
                while (order.size() <= comp.size()) {
                    order.push_back(cur);
                    std::size_t next = none;
                    for (std::size_t w : nbrs[cur])
                        if (w != prev) next = w;
                    if (next == none) break;
                    prev = cur;
                    cur = next;
                }
                if (order.size() != comp.size()) {
                    chain = false;
                    order = comp;
                }
            }
        }

        if (chain) {
            const bool all_minus_two = std::all_of(order.begin(), order.end(),
                                                   [&](std::size_t i) { return g(i, i) == Rational(-2); });
            if (all_minus_two) {
                out.kind = SingularityComponent::Kind::A;
                out.n = static_cast<int>(order.size());
            } else if (order.size() == 1) {
                const Rational self = g(order[0], order[0]);
                if (self == Rational(-1)) {
                    out.kind = SingularityComponent::Kind::SmoothBlowDown;
                    out.n = 1;
                } else {
                    out.kind = SingularityComponent::Kind::SingleCurve;
                    out.n = static_cast<int>((-self).numerator());
                }
            }
        }
        for (std::size_t i : order) out.curves.push_back(c.contracted()[i]);
        out.gram = QMatrix(order.size(), order.size());
        for (std::size_t i = 0; i < order.size(); ++i)
            for (std::size_t j = 0; j < order.size(); ++j) out.gram(i, j) = g(order[i], order[j]);
        report.components.push_back(std::move(out));
    }
    return report;
}

struct RelativeNefReport {
    std::map<std::string, Rational> intersections;
    bool nef = true;
};

inline RelativeNefReport relative_nef_report(const ContractionModel& c, const ClassVector& cls) {
    RelativeNefReport r;
    for (std::size_t j = 0; j < c.contracted().size(); ++j) {
        const Rational v = c.source().intersect(cls, c.curve_class(j));
        if (v.sign() < 0) r.nef = false;
        r.intersections[c.contracted()[j]] = v;
    }
    return r;
}

inline RelativeNefReport relative_nef_report(const ContractionModel& c, const Divisor& d) {
    return relative_nef_report(c, c.source().divisor_class(d));
}

inline void require_rank_one(const ContractionModel& c) {
    if (c.target_rank() != 1) throw RankNotOne(c.target_rank());
}

/// On a Picard-rank-one target, the sign of d against an effective curve
/// decides ampleness: +1 ample, -1 anti-ample, 0 numerically trivial.
inline int ample_check_rank_one(const ContractionModel& c, const Divisor& d, const Divisor& witness) {
    require_rank_one(c);
    return descend_intersection(c, d, witness).sign();
}

inline int canonical_sign_rank_one(const ContractionModel& c, const Divisor& witness) {
    require_rank_one(c);
    return descend_canonical_intersection(c, witness).sign();
}

} // namespace kvv

#endif // KVV_CONTRACTION_HPP
