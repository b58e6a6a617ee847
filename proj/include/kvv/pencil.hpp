#ifndef KVV_PENCIL_HPP
#define KVV_PENCIL_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kvv/plane_form.hpp"
#include "kvv/qla.hpp"

namespace kvv {

inline FieldPtr make_field(long p, int m) { return std::make_shared<const GaloisField>(p, m); }

/// Line through two distinct points, scaled so its first nonzero coefficient is 1.
inline Form line_through(const FieldPtr& F, const PlanePoint& p1, const PlanePoint& p2) {
    const auto& K = *F;
    const auto& a = p1.c;
    const auto& b = p2.c;
    Coords n{K.sub(K.mul(a[1], b[2]), K.mul(a[2], b[1])), K.sub(K.mul(a[2], b[0]), K.mul(a[0], b[2])),
             K.sub(K.mul(a[0], b[1]), K.mul(a[1], b[0]))};
    int first = 0;
    while (first < 3 && n[first].v == 0) ++first;
    if (first == 3) throw CoincidentPoints();
    const GFElement s = K.inv(n[first]);
    return Form::linear(F, K.mul(n[0], s), K.mul(n[1], s), K.mul(n[2], s));
}

/// Two cubic generators over F_p with the points and lines they were built from.
class PencilSpec {
public:
    PencilSpec(CubicForm c0, CubicForm cinf, std::map<std::string, PlanePoint> points = {},
               std::map<std::string, Form> lines = {})
        : c0_(std::move(c0)), cinf_(std::move(cinf)), points_(std::move(points)), lines_(std::move(lines)) {
        if (c0_.is_zero() || cinf_.is_zero()) throw std::invalid_argument("pencil generator is zero");
        if (c0_.degree() != cinf_.degree()) throw std::invalid_argument("pencil generators differ in degree");
        if (proportional(c0_, cinf_)) throw std::invalid_argument("pencil generators are proportional");
    }

    const CubicForm& c0() const noexcept { return c0_; }
    const CubicForm& cinf() const noexcept { return cinf_; }
    const FieldPtr& field() const noexcept { return c0_.field(); }
    const std::map<std::string, PlanePoint>& points() const noexcept { return points_; }
    const std::map<std::string, Form>& lines() const noexcept { return lines_; }

    /// C_t = C_0 + t C_inf; t = nullopt means C_inf.
    CubicForm member(std::optional<GFElement> t) const {
        if (!t) return cinf_;
        return c0_ + cinf_.scaled(*t);
    }

    static bool proportional(const Form& f, const Form& g) {
        const auto& K = f.F();
        const auto& a = f.coefficients();
        const auto& b = g.coefficients();
        std::size_t k = 0;
        while (k < a.size() && a[k].v == 0) ++k;
        if (k == a.size() || b[k].v == 0) return false;
        const GFElement r = K.div(b[k], a[k]);
        for (std::size_t n = 0; n < a.size(); ++n)
            if (K.mul(a[n], r) != b[n]) return false;
        return true;
    }

private:
    CubicForm c0_;
    CubicForm cinf_;
    std::map<std::string, PlanePoint> points_;
    std::map<std::string, Form> lines_;
};

/// The pencil spanned by the line triangles L_ad L_ac L_bc and L_ab L_bd L_cd
/// through a = [-1,1,1], b = [-1,-1,1], c = [1,-1,1], d = [1,1,1] over F_p.
/// Each generator is scaled so its last nonzero coefficient is 1.
inline PencilSpec build_standard_pencil(long p) {
    if (p == 2) throw BadCharacteristic("the four points collide in characteristic 2");
    if (!is_prime(p)) throw BadCharacteristic(std::to_string(p) + " is not prime");
    const FieldPtr F = make_field(p, 1);
    const auto& K = *F;
    const GFElement one = K.one(), m1 = K.from_int(-1);
    std::map<std::string, PlanePoint> pts{
        {"a", PlanePoint::normalized(K, {m1, one, one})},
        {"b", PlanePoint::normalized(K, {m1, m1, one})},
        {"c", PlanePoint::normalized(K, {one, m1, one})},
        {"d", PlanePoint::normalized(K, {one, one, one})},
    };
    const std::vector<std::string> names{"a", "b", "c", "d"};
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j)
            for (std::size_t k = j + 1; k < 4; ++k) {
                const auto& u = pts[names[i]].c;
                const auto& v = pts[names[j]].c;
                const auto& w = pts[names[k]].c;
                const GFElement det = K.add(
                    K.sub(K.mul(u[0], K.sub(K.mul(v[1], w[2]), K.mul(v[2], w[1]))),
                          K.mul(u[1], K.sub(K.mul(v[0], w[2]), K.mul(v[2], w[0])))),
                    K.mul(u[2], K.sub(K.mul(v[0], w[1]), K.mul(v[1], w[0]))));
                if (det.v == 0)
                    throw BadCharacteristic("three of the four points are collinear in characteristic " +
                                            std::to_string(p));
            }
    std::map<std::string, Form> lines;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j)
            lines.emplace("L_" + names[i] + names[j], line_through(F, pts[names[i]], pts[names[j]]));
    const CubicForm c0 = (lines.at("L_ad") * lines.at("L_ac") * lines.at("L_bc")).normalized_last();
    const CubicForm cinf = (lines.at("L_ab") * lines.at("L_bd") * lines.at("L_cd")).normalized_last();
    return PencilSpec(c0, cinf, std::move(pts), std::move(lines));
}

enum class SingularityType { Smooth, Node, Cusp, MultGe3, Unclassified };

inline const char* to_string(SingularityType t) {
    switch (t) {
    case SingularityType::Smooth: return "SMOOTH";
    case SingularityType::Node: return "NODE";
    case SingularityType::Cusp: return "CUSP";
    case SingularityType::MultGe3: return "MULT_GE_3";
    case SingularityType::Unclassified: return "UNCLASSIFIED";
    }
    return "?";
}

/// Local type of the curve f = 0 at pt, read off the Taylor expansion there.
/// A double point is a cusp only when its tangent cone is a double line and the
/// cubic term does not vanish along it; other degenerate double points are
/// reported Unclassified.
inline SingularityType classify_singularity(const Form& f, const PlanePoint& pt) {
    const auto& K = f.F();
    if (f.eval(pt).v != 0) throw PointNotOnCurve();
    const AffinePoly loc = local_expansion(f, pt);
    auto at = [&](int a, int b) {
        auto it = loc.find({a, b});
        return it == loc.end() ? GFElement{} : it->second;
    };
    if (at(1, 0).v != 0 || at(0, 1).v != 0) return SingularityType::Smooth;

    const GFElement alpha = at(2, 0), beta = at(1, 1), gamma = at(0, 2);
    if (alpha.v == 0 && beta.v == 0 && gamma.v == 0) return SingularityType::MultGe3;

    const bool char2 = K.characteristic() == 2;
    const GFElement disc = char2 ? beta : K.sub(K.mul(beta, beta), K.mul(K.from_int(4), K.mul(alpha, gamma)));
    if (disc.v != 0) return SingularityType::Node;

    // Direction (u0, w0) of the doubled tangent line.
    GFElement u0 = K.one(), w0 = K.zero();
    if (alpha.v != 0) {
        w0 = K.one();
        u0 = char2 ? K.sqrt(K.div(gamma, alpha)) : K.neg(K.div(beta, K.mul(K.from_int(2), alpha)));
    }
    GFElement cubic{};
    for (int a = 0; a <= 3; ++a) {
        const GFElement c = at(a, 3 - a);
        if (c.v == 0) continue;
        cubic = K.add(cubic, K.mul(c, K.mul(K.pow(u0, a), K.pow(w0, 3 - a))));
    }
    return cubic.v != 0 ? SingularityType::Cusp : SingularityType::Unclassified;
}

struct SingularPoint {
    PlanePoint point;
    SingularityType type;
};

/// Points of P^2(F_{p^m}) where f and all three partials vanish, by enumeration.
inline std::vector<SingularPoint> singular_points(const Form& f, int ext_degree) {
    if (f.is_zero()) throw std::invalid_argument("zero form");
    const FieldPtr F = (f.F().degree() == ext_degree) ? f.field()
                                                       : make_field(f.F().characteristic(), ext_degree);
    const Form g = f.over(F);
    const std::array<Form, 3> d{g.partial(0), g.partial(1), g.partial(2)};
    std::vector<SingularPoint> out;
    for (const auto& pt : enumerate_plane(*F)) {
        if (g.eval(pt).v != 0) continue;
        if (d[0].eval(pt).v != 0 || d[1].eval(pt).v != 0 || d[2].eval(pt).v != 0) continue;
        out.push_back({pt, classify_singularity(g, pt)});
    }
    return out;
}

struct PencilRow {
    std::string t; ///< element of F_p as a decimal string, or "inf"
    CubicForm member;
    std::vector<SingularPoint> singular;
};

struct PencilScan {
    FieldPtr field; ///< the field F_{p^m} that was enumerated
    std::vector<PencilRow> rows;
};

inline PencilScan scan_pencil(const PencilSpec& spec, int ext_degree) {
    const auto& base = spec.field();
    const long p = base->characteristic();
    PencilScan scan{make_field(p, ext_degree), {}};
    std::vector<std::pair<std::string, std::optional<GFElement>>> ts;
    for (long t = 0; t < p; ++t) ts.emplace_back(std::to_string(t), base->from_int(t));
    ts.emplace_back("inf", std::nullopt);
    for (const auto& [label, t] : ts) {
        const CubicForm m = spec.member(t);
        auto sing = singular_points(m.over(scan.field), ext_degree);
        scan.rows.push_back({label, m, std::move(sing)});
    }
    return scan;
}

/// dim of the local algebra O_pt / (f, g), by Macaulay matrices truncated at
/// degree N until the dimension stops growing.
inline int local_intersection_multiplicity(const Form& f, const Form& g, const PlanePoint& pt, int degree_bound = 10) {
    const auto& K = f.F();
    const AffinePoly lf = local_expansion(f, pt);
    const AffinePoly lg = local_expansion(g, pt);
    int previous = -1;
    for (int N = 1; N <= degree_bound; ++N) {
        std::map<std::pair<int, int>, std::size_t> col;
        for (int d = 0; d < N; ++d)
            for (int a = d; a >= 0; --a) col.emplace(std::pair{a, d - a}, col.size());
        const std::size_t cols = col.size();
        std::vector<GFElement> grid;
        std::size_t rows = 0;
        for (const auto* poly : {&lf, &lg})
            for (const auto& [mono, _] : col) {
                std::vector<GFElement> row(cols);
                bool any = false;
                for (const auto& [e, c] : *poly) {
                    const std::pair<int, int> s{e.first + mono.first, e.second + mono.second};
                    if (s.first + s.second >= N) continue;
                    row[col.at(s)] = c;
                    any = true;
                }
                if (!any) continue;
                grid.insert(grid.end(), row.begin(), row.end());
                ++rows;
            }
        const auto pivots = row_echelon(
            grid, rows, cols, [](GFElement x) { return x.v == 0; },
            [&](GFElement a, GFElement b) { return K.sub(a, b); },
            [&](GFElement a, GFElement b) { return K.mul(a, b); },
            [&](GFElement a, GFElement b) { return K.div(a, b); });
        const int dim = static_cast<int>(cols - pivots.size());
        if (dim == previous) return dim;
        previous = dim;
    }
    throw MultiplicityBoundExceeded(degree_bound);
}

struct BaseLocus {
    FieldPtr field; ///< extension in which the points were found
    std::vector<std::pair<PlanePoint, int>> points;
    int total = 0;
    /// True when the multiplicities account for the full product of degrees.
    bool complete = false;
};

/// Common zeros of the generators with local intersection multiplicities,
/// searching F_{p^m} for m = 1..max_ext until the Bezout number is reached.
inline BaseLocus base_locus(const PencilSpec& spec, int max_ext = 3, int degree_bound = 10) {
    const long p = spec.field()->characteristic();
    const int bezout = spec.c0().degree() * spec.cinf().degree();
    BaseLocus best;
    for (int m = 1; m <= max_ext; ++m) {
        BaseLocus cur;
        cur.field = make_field(p, m);
        const Form f = spec.c0().over(cur.field);
        const Form g = spec.cinf().over(cur.field);
        for (const auto& pt : enumerate_plane(*cur.field)) {
            if (f.eval(pt).v != 0 || g.eval(pt).v != 0) continue;
            const int mult = local_intersection_multiplicity(f, g, pt, degree_bound);
            cur.points.emplace_back(pt, mult);
            cur.total += mult;
        }
        cur.complete = cur.total == bezout;
        if (cur.complete) return cur;
        if (!best.field || cur.total > best.total) best = std::move(cur);
    }
    return best;
}

} // namespace kvv

#endif // KVV_PENCIL_HPP
