#ifndef KVV_PLANE_FORM_HPP
#define KVV_PLANE_FORM_HPP

#include <array>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "kvv/galois_field.hpp"

namespace kvv {

using FieldPtr = std::shared_ptr<const GaloisField>;
using Coords = std::array<GFElement, 3>;
using Matrix3 = std::array<std::array<GFElement, 3>, 3>;

/// Point of P^2 over a finite field, scaled so its last nonzero coordinate is 1.
struct PlanePoint {
    Coords c{};

    static PlanePoint normalized(const GaloisField& F, Coords v) {
        int last = -1;
        for (int i = 2; i >= 0; --i)
            if (v[i].v != 0) {
                last = i;
                break;
            }
        if (last < 0) throw std::invalid_argument("the zero vector is not a projective point");
        const GFElement s = F.inv(v[last]);
        for (auto& x : v) x = F.mul(x, s);
        return {v};
    }

    std::string to_string(const GaloisField& F) const {
        return "[" + F.to_string(c[0]) + "," + F.to_string(c[1]) + "," + F.to_string(c[2]) + "]";
    }

    friend bool operator==(const PlanePoint&, const PlanePoint&) = default;
    friend auto operator<=>(const PlanePoint&, const PlanePoint&) = default;
};

/// Every point of P^2(F_q), in a fixed order: [x,y,1], then [x,1,0], then [1,0,0].
inline std::vector<PlanePoint> enumerate_plane(const GaloisField& F) {
    const std::uint32_t q = F.order();
    std::vector<PlanePoint> pts;
    pts.reserve(static_cast<std::size_t>(q) * q + q + 1);
    for (std::uint32_t x = 0; x < q; ++x)
        for (std::uint32_t y = 0; y < q; ++y) pts.push_back({{F.element(x), F.element(y), F.one()}});
    for (std::uint32_t x = 0; x < q; ++x) pts.push_back({{F.element(x), F.one(), F.zero()}});
    pts.push_back({{F.one(), F.zero(), F.zero()}});
    return pts;
}

/// Homogeneous polynomial in x, y, z over a finite field.
///
/// Coefficients are stored densely, monomials ordered by descending power of
/// x, then of y; for cubics: x^3, x^2y, x^2z, xy^2, xyz, xz^2, y^3, y^2z, yz^2, z^3.
class Form {
public:
    Form(FieldPtr field, int degree)
        : field_(std::move(field)), degree_(degree), coef_(monomial_count(degree), GFElement{}) {
        if (degree < 0) throw std::invalid_argument("negative degree");
    }

    static std::size_t monomial_count(int d) { return static_cast<std::size_t>((d + 1) * (d + 2) / 2); }

    static std::size_t index(int d, int i, int j) {
        const int s = d - i;
        return static_cast<std::size_t>(s * (s + 1) / 2 + (s - j));
    }

    /// Exponent triples in storage order.
    static std::vector<std::array<int, 3>> monomials(int d) {
        std::vector<std::array<int, 3>> out;
        for (int i = d; i >= 0; --i)
            for (int j = d - i; j >= 0; --j) out.push_back({i, j, d - i - j});
        return out;
    }

    static Form linear(FieldPtr F, GFElement a, GFElement b, GFElement c) {
        Form f(std::move(F), 1);
        f.coef_ = {a, b, c};
        return f;
    }

    const FieldPtr& field() const noexcept { return field_; }
    const GaloisField& F() const noexcept { return *field_; }
    int degree() const noexcept { return degree_; }
    const std::vector<GFElement>& coefficients() const noexcept { return coef_; }

    GFElement coefficient(int i, int j, int k) const {
        if (i < 0 || j < 0 || k < 0 || i + j + k != degree_) return GFElement{};
        return coef_[index(degree_, i, j)];
    }
    void set(int i, int j, int k, GFElement v) {
        if (i + j + k != degree_) throw std::invalid_argument("monomial degree mismatch");
        coef_[index(degree_, i, j)] = v;
    }

    bool is_zero() const {
        for (auto c : coef_)
            if (c.v != 0) return false;
        return true;
    }

    Form operator+(const Form& o) const { return combine(o, false); }
    Form operator-(const Form& o) const { return combine(o, true); }

    Form scaled(GFElement s) const {
        Form r = *this;
        for (auto& c : r.coef_) c = F().mul(c, s);
        return r;
    }

    Form operator*(const Form& o) const {
        require_same_field(o);
        Form r(field_, degree_ + o.degree_);
        const auto ma = monomials(degree_);
        const auto mb = monomials(o.degree_);
        for (std::size_t a = 0; a < ma.size(); ++a) {
            if (coef_[a].v == 0) continue;
            for (std::size_t b = 0; b < mb.size(); ++b) {
                if (o.coef_[b].v == 0) continue;
                auto& slot = r.coef_[index(r.degree_, ma[a][0] + mb[b][0], ma[a][1] + mb[b][1])];
                slot = F().add(slot, F().mul(coef_[a], o.coef_[b]));
            }
        }
        return r;
    }

    GFElement eval(const Coords& p) const {
        const auto& K = F();
        GFElement acc{};
        const auto ms = monomials(degree_);
        for (std::size_t n = 0; n < ms.size(); ++n) {
            if (coef_[n].v == 0) continue;
            GFElement t = coef_[n];
            for (int v = 0; v < 3; ++v) t = K.mul(t, K.pow(p[v], static_cast<std::uint64_t>(ms[n][v])));
            acc = K.add(acc, t);
        }
        return acc;
    }
    GFElement eval(const PlanePoint& p) const { return eval(p.c); }

    /// Formal partial derivative with respect to variable 0, 1 or 2.
    Form partial(int var) const {
        Form r(field_, degree_ == 0 ? 0 : degree_ - 1);
        if (degree_ == 0) return r;
        const auto ms = monomials(degree_);
        for (std::size_t n = 0; n < ms.size(); ++n) {
            auto e = ms[n];
            if (e[var] == 0 || coef_[n].v == 0) continue;
            const GFElement c = F().mul(coef_[n], F().from_int(e[var]));
            --e[var];
            r.coef_[index(r.degree_, e[0], e[1])] = F().add(r.coef_[index(r.degree_, e[0], e[1])], c);
        }
        return r;
    }

    /// g(v) = f(M v).
    Form compose(const Matrix3& M) const {
        std::array<Form, 3> subs{Form(field_, 1), Form(field_, 1), Form(field_, 1)};
        for (int r = 0; r < 3; ++r) subs[r] = linear(field_, M[r][0], M[r][1], M[r][2]);
        Form out(field_, degree_);
        const auto ms = monomials(degree_);
        for (std::size_t n = 0; n < ms.size(); ++n) {
            if (coef_[n].v == 0) continue;
            Form term(field_, 0);
            term.coef_[0] = coef_[n];
            for (int v = 0; v < 3; ++v)
                for (int e = 0; e < ms[n][v]; ++e) term = term * subs[v];
            out = out + term;
        }
        return out;
    }

    /// The same polynomial over another field containing this one's coefficients.
    /// Only prime-field coefficients can move between fields.
    Form over(FieldPtr target) const {
        if (*target == F()) {
            Form r = *this;
            r.field_ = std::move(target);
            return r;
        }
        if (target->characteristic() != F().characteristic())
            throw std::invalid_argument("fields of different characteristic");
        Form r(target, degree_);
        for (std::size_t n = 0; n < coef_.size(); ++n) {
            if (coef_[n].v >= static_cast<std::uint32_t>(F().characteristic()))
                throw std::invalid_argument("coefficient outside the prime field");
            r.coef_[n] = coef_[n];
        }
        return r;
    }

    /// Scaled so the last nonzero coefficient in storage order is 1.
    Form normalized_last() const {
        for (std::size_t n = coef_.size(); n-- > 0;)
            if (coef_[n].v != 0) return scaled(F().inv(coef_[n]));
        return *this;
    }

    std::string to_string() const {
        std::string out;
        const auto ms = monomials(degree_);
        static const char* names[3] = {"x", "y", "z"};
        for (std::size_t n = 0; n < ms.size(); ++n) {
            if (coef_[n].v == 0) continue;
            std::string mono;
            for (int v = 0; v < 3; ++v) {
                if (ms[n][v] == 0) continue;
                mono += names[v];
                if (ms[n][v] > 1) mono += "^" + std::to_string(ms[n][v]);
            }
            std::string c = F().to_string(coef_[n]);
            if (F().degree() > 1 && c.find('+') != std::string::npos) c = "(" + c + ")";
            std::string term = mono.empty() ? c : (coef_[n] == F().one() ? mono : c + "*" + mono);
            out += (out.empty() ? "" : " + ") + term;
        }
        return out.empty() ? "0" : out;
    }

    friend bool operator==(const Form& a, const Form& b) {
        return a.degree_ == b.degree_ && *a.field_ == *b.field_ && a.coef_ == b.coef_;
    }

private:
    void require_same_field(const Form& o) const {
        if (!(F() == o.F())) throw std::invalid_argument("forms over different fields");
    }

    Form combine(const Form& o, bool subtract) const {
        require_same_field(o);
        if (degree_ != o.degree_) throw std::invalid_argument("adding forms of different degree");
        Form r = *this;
        for (std::size_t n = 0; n < coef_.size(); ++n)
            r.coef_[n] = subtract ? F().sub(coef_[n], o.coef_[n]) : F().add(coef_[n], o.coef_[n]);
        return r;
    }

    FieldPtr field_;
    int degree_;
    std::vector<GFElement> coef_;
};

using CubicForm = Form;

/// Polynomial in two affine variables (u, w), sparse.
using AffinePoly = std::map<std::pair<int, int>, GFElement>;

/// Matrix with columns (e_i, e_j, pt): sends the origin of the chart {s = 1}
/// to pt and is invertible because pt has a 1 in the remaining coordinate.
inline Matrix3 chart_at(const GaloisField& F, const PlanePoint& pt) {
    int t = 2;
    while (t >= 0 && pt.c[t].v == 0) --t;
    if (t < 0) throw std::invalid_argument("zero point");
    Matrix3 M{};
    int col = 0;
    for (int i = 0; i < 3; ++i) {
        if (i == t) continue;
        M[i][col] = F.one();
        ++col;
    }
    for (int r = 0; r < 3; ++r) M[r][2] = pt.c[r];
    return M;
}

/// f in local affine coordinates centred at pt.
inline AffinePoly local_expansion(const Form& f, const PlanePoint& pt) {
    const Form g = f.compose(chart_at(f.F(), pt));
    AffinePoly out;
    for (const auto& e : Form::monomials(f.degree())) {
        const GFElement c = g.coefficient(e[0], e[1], e[2]);
        if (c.v != 0) out[{e[0], e[1]}] = c;
    }
    return out;
}

} // namespace kvv

#endif // KVV_PLANE_FORM_HPP
