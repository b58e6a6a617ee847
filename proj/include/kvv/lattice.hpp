#ifndef KVV_LATTICE_HPP
#define KVV_LATTICE_HPP

#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "kvv/error.hpp"
#include "kvv/qla.hpp"

namespace kvv {

/// Coordinates of a divisor class in the basis (H, e_1, ..., e_n) where e_i is
/// the total transform of the i-th exceptional curve.
using ClassVector = QVector;

struct TrackedCurve {
    std::string name;
    ClassVector cls;
    bool is_prime = true;

    friend bool operator==(const TrackedCurve&, const TrackedCurve&) = default;
};

/// One point blow-up. The multiplicity map lists every tracked curve passing
/// through the center; infinitely-near centers are expressed by giving an
/// earlier exceptional curve a positive multiplicity.
struct BlowUpRecord {
    std::string new_class_name;
    std::map<std::string, int> center_multiplicities;

    friend bool operator==(const BlowUpRecord&, const BlowUpRecord&) = default;
};

/// Formal Q-linear combination of named curves. Zero coefficients are never stored.
class Divisor {
public:
    Divisor() = default;
    Divisor(std::initializer_list<std::pair<const std::string, Rational>> init) {
        for (const auto& [name, c] : init) add(name, c);
    }

    static Divisor single(const std::string& name, const Rational& c = 1) {
        Divisor d;
        d.add(name, c);
        return d;
    }

    const std::map<std::string, Rational>& terms() const noexcept { return terms_; }
    bool empty() const noexcept { return terms_.empty(); }

    Rational coefficient(const std::string& name) const {
        auto it = terms_.find(name);
        return it == terms_.end() ? Rational{} : it->second;
    }

    Divisor& add(const std::string& name, const Rational& c) {
        Rational& slot = terms_[name];
        slot += c;
        if (slot.is_zero()) terms_.erase(name);
        return *this;
    }

    bool is_integral() const {
        for (const auto& [_, c] : terms_)
            if (!c.is_integer()) return false;
        return true;
    }

    Divisor& operator+=(const Divisor& o) {
        for (const auto& [n, c] : o.terms_) add(n, c);
        return *this;
    }
    Divisor& operator-=(const Divisor& o) {
        for (const auto& [n, c] : o.terms_) add(n, -c);
        return *this;
    }
    Divisor& operator*=(const Rational& k) {
        if (k.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& [_, c] : terms_) c *= k;
        return *this;
    }
    friend Divisor operator+(Divisor a, const Divisor& b) { return a += b; }
    friend Divisor operator-(Divisor a, const Divisor& b) { return a -= b; }
    friend Divisor operator*(const Rational& k, Divisor d) { return d *= k; }
    Divisor operator-() const { return Rational(-1) * *this; }

    friend bool operator==(const Divisor&, const Divisor&) = default;

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& [n, c] : terms_) {
            const Rational a = c.sign() < 0 ? -c : c;
            const std::string term = (a == 1 ? "" : a.to_string() + "*") + n;
            if (out.empty()) out = (c.sign() < 0 ? "-" : "") + term;
            else out += (c.sign() < 0 ? " - " : " + ") + term;
        }
        return out;
    }

private:
    std::map<std::string, Rational> terms_;
};

/// A rational surface obtained from the projective plane by point blow-ups,
/// held as its Picard lattice in the orthogonal pullback basis.
///
/// The Gram matrix is always diag(1, -1, ..., -1). Models are immutable:
/// every mutator returns a new model.
class SurfaceModel {
public:
    static SurfaceModel projective_plane() {
        SurfaceModel s;
        s.basis_names_ = {"H"};
        s.canonical_ = {Rational(-3)};
        return s;
    }

    std::size_t rank() const noexcept { return basis_names_.size(); }
    const std::vector<std::string>& basis_names() const noexcept { return basis_names_; }
    const ClassVector& canonical() const noexcept { return canonical_; }
    const std::vector<TrackedCurve>& curves() const noexcept { return curves_; }
    const std::vector<BlowUpRecord>& history() const noexcept { return history_; }

    QMatrix gram() const {
        QMatrix g(rank(), rank());
        g(0, 0) = 1;
        for (std::size_t i = 1; i < rank(); ++i) g(i, i) = -1;
        return g;
    }

    bool has_curve(const std::string& name) const { return index_.contains(name); }

    const TrackedCurve& curve(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end()) throw UnknownCurve(name);
        return curves_[it->second];
    }

    /// Hyperplane class scaled by `degree`, padded to the current rank.
    ClassVector plane_class(long degree) const {
        ClassVector v(rank());
        v[0] = degree;
        return v;
    }

    ClassVector basis_vector(std::size_t i) const {
        ClassVector v(rank());
        v.at(i) = 1;
        return v;
    }

    SurfaceModel with_curve(const std::string& name, ClassVector cls, bool is_prime = true) const {
        if (has_curve(name)) throw DuplicateCurve(name);
        if (cls.size() != rank()) throw DimensionMismatch("curve class length differs from Picard rank");
        SurfaceModel s = *this;
        s.index_.emplace(name, s.curves_.size());
        s.curves_.push_back({name, std::move(cls), is_prime});
        s.born_at_rank_.push_back(rank());
        return s;
    }

    /// Registers a curve of the given degree in the plane. If blow-ups already
    /// happened, the curve is taken to avoid all their centers.
    SurfaceModel with_plane_curve(const std::string& name, long degree) const {
        return with_curve(name, plane_class(degree));
    }

    SurfaceModel blow_up(const BlowUpRecord& record) const {
        for (const auto& [name, m] : record.center_multiplicities) {
            if (!has_curve(name)) throw UnknownCurve(name);
            if (m < 0) throw std::invalid_argument("negative multiplicity on '" + name + "'");
        }
        if (has_curve(record.new_class_name)) throw DuplicateCurve(record.new_class_name);

        SurfaceModel s = *this;
        const std::size_t k = s.rank();
        s.basis_names_.push_back(record.new_class_name);
        s.canonical_.push_back(Rational(1));
        for (auto& c : s.curves_) {
            auto it = record.center_multiplicities.find(c.name);
            const int m = it == record.center_multiplicities.end() ? 0 : it->second;
            c.cls.push_back(Rational(-m));
        }
        s.history_.push_back(record);
        return s.with_curve(record.new_class_name, s.basis_vector(k));
    }

    Rational intersect(std::span<const Rational> a, std::span<const Rational> b) const {
        if (a.size() != rank() || b.size() != rank())
            throw DimensionMismatch("class vectors do not match Picard rank " + std::to_string(rank()));
        Rational s = a[0] * b[0];
        for (std::size_t i = 1; i < rank(); ++i)
            if (!a[i].is_zero() && !b[i].is_zero()) s -= a[i] * b[i];
        return s;
    }

    Rational intersect_curves(const std::string& a, const std::string& b) const {
        return intersect(curve(a).cls, curve(b).cls);
    }

    Rational canonical_square() const { return intersect(canonical_, canonical_); }

    /// Adjunction genus 1 + (C^2 + K.C)/2.
    Rational arithmetic_genus(std::span<const Rational> c) const {
        return Rational(1) + (intersect(c, c) + intersect(canonical_, c)) / Rational(2);
    }

    ClassVector divisor_class(const Divisor& d) const {
        ClassVector v(rank());
        for (const auto& [name, coef] : d.terms()) {
            const auto& cls = curve(name).cls;
            for (std::size_t i = 0; i < v.size(); ++i)
                if (!cls[i].is_zero()) v[i] += coef * cls[i];
        }
        return v;
    }

    /// Coefficient-wise floor on prime components.
    Divisor floor_divisor(const Divisor& d) const {
        Divisor out;
        for (const auto& [name, coef] : d.terms()) {
            if (!curve(name).is_prime) throw NonPrimeTerm(name);
            out.add(name, coef.floor());
        }
        return out;
    }

    /// Model after the first `count` blow-ups of this model's history, with
    /// only the curves that existed at that point.
    SurfaceModel truncated(std::size_t count) const {
        if (count > history_.size()) throw std::out_of_range("stage beyond blow-up history");
        SurfaceModel s;
        s.basis_names_.assign(basis_names_.begin(), basis_names_.begin() + 1 + count);
        s.canonical_.assign(canonical_.begin(), canonical_.begin() + 1 + count);
        s.history_.assign(history_.begin(), history_.begin() + count);
        for (std::size_t i = 0; i < curves_.size(); ++i) {
            if (born_at_rank_[i] > 1 + count) continue;
            const auto& c = curves_[i];
            ClassVector cls(c.cls.begin(), c.cls.begin() + 1 + count);
            s.index_.emplace(c.name, s.curves_.size());
            s.curves_.push_back({c.name, std::move(cls), c.is_prime});
            s.born_at_rank_.push_back(born_at_rank_[i]);
        }
        return s;
    }

private:
    SurfaceModel() = default;

    std::vector<std::string> basis_names_;
    ClassVector canonical_;
    std::vector<TrackedCurve> curves_;
    std::unordered_map<std::string, std::size_t> index_;
    std::vector<std::size_t> born_at_rank_;
    std::vector<BlowUpRecord> history_;
};

inline SurfaceModel new_projective_plane() { return SurfaceModel::projective_plane(); }

inline SurfaceModel blow_up(const SurfaceModel& s, const BlowUpRecord& record) { return s.blow_up(record); }

inline Rational intersect(const SurfaceModel& s, std::span<const Rational> a, std::span<const Rational> b) {
    return s.intersect(a, b);
}

inline Rational arithmetic_genus(const SurfaceModel& s, std::span<const Rational> c) {
    return s.arithmetic_genus(c);
}

inline ClassVector divisor_class(const SurfaceModel& s, const Divisor& d) { return s.divisor_class(d); }

inline Divisor floor_divisor(const SurfaceModel& s, const Divisor& d) { return s.floor_divisor(d); }

} // namespace kvv

#endif // KVV_LATTICE_HPP
