#ifndef KVV_GALOIS_FIELD_HPP
#define KVV_GALOIS_FIELD_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "kvv/error.hpp"

namespace kvv {

/// Element of a GaloisField: the integer sum c_i p^i encoding the residue
/// polynomial sum c_i x^i.
struct GFElement {
    std::uint32_t v = 0;
    friend bool operator==(GFElement, GFElement) = default;
    friend auto operator<=>(GFElement, GFElement) = default;
};

inline bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// F_q with q = p^m, built on the lexicographically least monic irreducible
/// modulus of degree m (coefficients compared from x^{m-1} down to x^0).
/// Multiplication goes through discrete log tables, so q is kept small.
class GaloisField {
public:
    static constexpr std::uint32_t kMaxOrder = 1u << 22;

    GaloisField(long p, int m) : p_(p), m_(m) {
        if (!is_prime(p)) throw BadCharacteristic(std::to_string(p) + " is not prime");
        if (m < 1) throw std::invalid_argument("extension degree must be positive");
        std::uint64_t q = 1;
        for (int i = 0; i < m; ++i) {
            q *= static_cast<std::uint64_t>(p);
            if (q > kMaxOrder) throw std::invalid_argument("field too large for table arithmetic");
        }
        q_ = static_cast<std::uint32_t>(q);
        modulus_ = least_irreducible(p, m);
        build_tables();
    }

    long characteristic() const noexcept { return p_; }
    int degree() const noexcept { return m_; }
    std::uint32_t order() const noexcept { return q_; }
    /// Modulus coefficients, constant term first, monic.
    const std::vector<long>& modulus() const noexcept { return modulus_; }

    GFElement zero() const { return {0}; }
    GFElement one() const { return {1}; }
    GFElement from_int(long n) const {
        long r = n % p_;
        if (r < 0) r += p_;
        return {static_cast<std::uint32_t>(r)};
    }
    GFElement element(std::uint32_t index) const { return {index}; }

    /// The residue class of x, a generator over the prime field.
    GFElement x() const { return m_ == 1 ? GFElement{0} : GFElement{static_cast<std::uint32_t>(p_)}; }

    GFElement add(GFElement a, GFElement b) const { return combine(a, b, 1); }
    GFElement sub(GFElement a, GFElement b) const { return combine(a, b, p_ - 1); }
    GFElement neg(GFElement a) const { return sub(zero(), a); }

    GFElement mul(GFElement a, GFElement b) const {
        if (a.v == 0 || b.v == 0) return zero();
        std::uint32_t e = log_[a.v] + log_[b.v];
        if (e >= q_ - 1) e -= q_ - 1;
        return {exp_[e]};
    }

    GFElement inv(GFElement a) const {
        if (a.v == 0) throw std::domain_error("inverse of zero in finite field");
        const std::uint32_t l = log_[a.v];
        return {exp_[l == 0 ? 0 : q_ - 1 - l]};
    }

    GFElement div(GFElement a, GFElement b) const { return mul(a, inv(b)); }

    GFElement pow(GFElement a, std::uint64_t e) const {
        if (e == 0) return one();
        if (a.v == 0) return zero();
        return {exp_[(static_cast<std::uint64_t>(log_[a.v]) * (e % (q_ - 1))) % (q_ - 1)]};
    }

    bool is_square(GFElement a) const { return a.v == 0 || p_ == 2 || log_[a.v] % 2 == 0; }

    /// A square root of a square; in characteristic 2 every element has exactly one.
    GFElement sqrt(GFElement a) const {
        if (a.v == 0) return zero();
        if (p_ == 2) return pow(a, q_ / 2);
        if (!is_square(a)) throw std::domain_error("not a square");
        return {exp_[log_[a.v] / 2]};
    }

    std::string to_string(GFElement a) const {
        if (m_ == 1) return std::to_string(a.v);
        std::string out;
        std::uint32_t v = a.v;
        std::vector<long> c(m_);
        for (int i = 0; i < m_; ++i) {
            c[i] = v % p_;
            v /= p_;
        }
        for (int i = m_ - 1; i >= 0; --i) {
            if (c[i] == 0) continue;
            if (!out.empty()) out += "+";
            if (i == 0) out += std::to_string(c[i]);
            else {
                if (c[i] != 1) out += std::to_string(c[i]) + "*";
                out += i == 1 ? "x" : "x^" + std::to_string(i);
            }
        }
        return out.empty() ? "0" : out;
    }

    friend bool operator==(const GaloisField& a, const GaloisField& b) {
        return a.p_ == b.p_ && a.m_ == b.m_;
    }

private:
    GFElement combine(GFElement a, GFElement b, long scale) const {
        if (m_ == 1) return {static_cast<std::uint32_t>((a.v + scale * b.v) % p_)};
        std::uint32_t out = 0, place = 1;
        std::uint32_t x = a.v, y = b.v;
        for (int i = 0; i < m_; ++i) {
            const long d = (x % p_ + scale * (y % p_)) % p_;
            out += static_cast<std::uint32_t>(d) * place;
            place *= static_cast<std::uint32_t>(p_);
            x /= p_;
            y /= p_;
        }
        return {out};
    }

    static std::vector<long> poly_mod(std::vector<long> a, const std::vector<long>& b, long p) {
        // b monic
        while (a.size() >= b.size()) {
            const long lead = a.back();
            const std::size_t shift = a.size() - b.size();
            for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = ((a[shift + i] - lead * b[i]) % p + p) % p;
            while (!a.empty() && a.back() == 0) a.pop_back();
        }
        return a;
    }

    /// Monic polynomial of degree `deg` whose lower coefficients are the base-p digits of idx,
    /// c_0 least significant. Increasing idx is lexicographic order on (c_{deg-1}, ..., c_0).
    static std::vector<long> monic_from_index(std::uint64_t idx, int deg, long p) {
        std::vector<long> c(deg + 1, 0);
        c[deg] = 1;
        for (int i = 0; i < deg; ++i) {
            c[i] = static_cast<long>(idx % p);
            idx /= p;
        }
        return c;
    }

    static std::vector<long> least_irreducible(long p, int m) {
        if (m == 1) return {0, 1};
        std::uint64_t count = 1;
        for (int i = 0; i < m; ++i) count *= p;
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            const auto f = monic_from_index(idx, m, p);
            if (f[0] == 0) continue;
            bool irreducible = true;
            for (int d = 1; d <= m / 2 && irreducible; ++d) {
                std::uint64_t cnt = 1;
                for (int i = 0; i < d; ++i) cnt *= p;
                for (std::uint64_t j = 0; j < cnt; ++j) {
                    if (poly_mod(f, monic_from_index(j, d, p), p).empty()) {
                        irreducible = false;
                        break;
                    }
                }
            }
            if (irreducible) return f;
        }
        throw InternalError("no irreducible polynomial found");
    }

    void build_tables() {
        exp_.assign(q_ - 1, 0);
        log_.assign(q_, 0);
        // Find a primitive element by trial: powers must cover F_q^*.
        for (std::uint32_t g = 1; g < q_; ++g) {
            std::vector<bool> seen(q_, false);
            std::uint32_t cur = 1;
            std::uint32_t n = 0;
            bool ok = true;
            for (; n < q_ - 1; ++n) {
                if (seen[cur]) {
                    ok = false;
                    break;
                }
                seen[cur] = true;
                exp_[n] = cur;
                log_[cur] = n;
                cur = slow_mul(cur, g);
            }
            if (ok && cur == 1) return;
        }
        throw InternalError("no primitive element found");
    }

    std::uint32_t slow_mul(std::uint32_t a, std::uint32_t b) const {
        std::vector<long> x(m_), y(m_);
        for (int i = 0; i < m_; ++i) {
            x[i] = a % p_;
            a /= p_;
            y[i] = b % p_;
            b /= p_;
        }
        std::vector<long> prod(2 * m_ - 1, 0);
        for (int i = 0; i < m_; ++i)
            for (int j = 0; j < m_; ++j) prod[i + j] = (prod[i + j] + x[i] * y[j]) % p_;
        while (!prod.empty() && prod.back() == 0) prod.pop_back();
        prod = poly_mod(prod, modulus_, p_);
        std::uint32_t out = 0, place = 1;
        for (std::size_t i = 0; i < prod.size(); ++i) {
            out += static_cast<std::uint32_t>(prod[i]) * place;
            place *= static_cast<std::uint32_t>(p_);
        }
        return out;
    }

    long p_;
    int m_;
    std::uint32_t q_ = 0;
    std::vector<long> modulus_;
    std::vector<std::uint32_t> exp_;
    std::vector<std::uint32_t> log_;
};

} // namespace kvv

#endif // KVV_GALOIS_FIELD_HPP
