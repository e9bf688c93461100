#pragma once

/**
 * @file ecurve.hpp
 * @brief The curves E: y^2 = x^3 + a x^2 + b x with the point alpha = (c, ck),
 *        their reductions mod p, the 2-isogeny pair, point counting and the
 *        odd-order prime scan.
 *
 * b = c k^2 - a c - c^2 is forced by alpha lying on E. The isogenous curve is
 * E': y^2 = x^3 - 2a x^2 + (a^2 - 4b) x.
 *
 * #E(F_p) is found by baby-step giant-step on random points: each point gives
 * its exact order, and the group order is the unique multiple of the running
 * lcm in the Hasse interval. When the exponent is too small to pin it down,
 * points on the quadratic twist (whose order is 2p + 2 - N) are added.
 */

#include "oddorder/arith.hpp"
#include "oddorder/factor.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <iomanip>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

namespace oddorder {

struct CurveParams {
    std::int64_t a = 0, c = 0, k = 0;
    BigInt b;           ///< c k^2 - a c - c^2
    BigInt disc_prime;  ///< a^2 - 4b
    BigInt delta;       ///< 16 b^2 (a^2 - 4b)
};

inline CurveParams curve_from_params(std::int64_t a, std::int64_t c, std::int64_t k) {
    CurveParams e;
    e.a = a;
    e.c = c;
    e.k = k;
    const BigInt A = a, C = c, K = k;
    e.b = C * K * K - A * C - C * C;
    e.disc_prime = A * A - 4 * e.b;
    e.delta = 16 * e.b * e.b * e.disc_prime;
    if (c == 0) throw contract_error("c = 0: alpha would be the 2-torsion point T");
    if (e.delta == 0) throw contract_error("singular curve: discriminant 16 b^2 (a^2 - 4b) is zero");
    return e;
}

inline std::string to_string(const CurveParams& e) {
    std::ostringstream os;
    os << "[" << e.a << "," << e.c << "," << e.k << "] b=" << e.b << " a^2-4b=" << e.disc_prime;
    return os.str();
}

struct ReducedPoint {
    u64 x = 0, y = 0;
    bool inf = true;

    static ReducedPoint infinity() { return {}; }
    static ReducedPoint affine(u64 x, u64 y) { return {x, y, false}; }
    friend bool operator==(const ReducedPoint&, const ReducedPoint&) = default;
};

/// y^2 = x^3 + a x^2 + b x over F_p, p an odd prime of good reduction.
class FpCurve {
  public:
    FpCurve(u64 p, u64 a, u64 b) : p_(p), a_(a % p), b_(b % p) {
        if (p < 3 || p % 2 == 0) throw contract_error("FpCurve: p must be an odd prime");
        const u64 disc = (mulmod(a_, a_, p_) + p_ - mulmod(4 % p_, b_, p_)) % p_;
        if (b_ == 0 || disc == 0) throw contract_error("FpCurve: bad reduction at p = " + std::to_string(p));
    }

    u64 p() const { return p_; }
    u64 a() const { return a_; }
    u64 b() const { return b_; }

    u64 rhs(u64 x) const {
        const u64 x2 = mulmod(x, x, p_);
        return (mulmod(x2, (x + a_) % p_, p_) + mulmod(b_, x, p_)) % p_;
    }

    bool contains(const ReducedPoint& P) const { return P.inf || mulmod(P.y, P.y, p_) == rhs(P.x); }

    ReducedPoint neg(const ReducedPoint& P) const {
        if (P.inf) return P;
        return ReducedPoint::affine(P.x, P.y == 0 ? 0 : p_ - P.y);
    }

    ReducedPoint add(const ReducedPoint& P, const ReducedPoint& Q) const {
        if (P.inf) return Q;
        if (Q.inf) return P;
        u64 lambda;
        if (P.x == Q.x) {
            if ((P.y + Q.y) % p_ == 0) return ReducedPoint::infinity();
            // (3x^2 + 2ax + b) / 2y
            const u64 num = (mulmod(3, mulmod(P.x, P.x, p_), p_) + mulmod(2 * a_ % p_, P.x, p_) + b_) % p_;
            lambda = mulmod(num, invmod(2 * P.y % p_, p_), p_);
        } else {
            lambda = mulmod((Q.y + p_ - P.y) % p_, invmod((Q.x + p_ - P.x) % p_, p_), p_);
        }
        const u64 x3 = (mulmod(lambda, lambda, p_) + 3 * p_ - a_ - P.x - Q.x) % p_;
        const u64 y3 = (mulmod(lambda, (P.x + p_ - x3) % p_, p_) + p_ - P.y) % p_;
        return ReducedPoint::affine(x3, y3);
    }

    ReducedPoint mul(u64 n, ReducedPoint P) const {
        ReducedPoint r = ReducedPoint::infinity();
        while (n) {
            if (n & 1) r = add(r, P);
            P = add(P, P);
            n >>= 1;
        }
        return r;
    }

    /// Curve y^2 = x^3 + d a x^2 + d^2 b x; for d a non-residue this is the
    /// quadratic twist.
    FpCurve twist(u64 d) const { return FpCurve(p_, mulmod(d, a_, p_), mulmod(mulmod(d, d, p_), b_, p_)); }

  private:
    u64 p_, a_, b_;
};

inline bool is_good_prime(const CurveParams& e, u64 p) {
    if (p < 3 || p % 2 == 0) return false;
    return e.b % p != 0 && e.disc_prime % p != 0;
}

inline u64 reduce_mod(const BigInt& x, u64 p) {
    BigInt r = x % p;
    if (r < 0) r += p;
    return static_cast<u64>(r);
}

inline u64 reduce_mod(std::int64_t x, u64 p) {
    const std::int64_t m = static_cast<std::int64_t>(p);
    std::int64_t r = x % m;
    return static_cast<u64>(r < 0 ? r + m : r);
}

inline FpCurve reduce_curve(const CurveParams& e, u64 p) {
    if (!is_good_prime(e, p)) throw contract_error("reduce_curve: p = " + std::to_string(p) + " is not a good odd prime");
    return FpCurve(p, reduce_mod(e.a, p), reduce_mod(e.b, p));
}

inline ReducedPoint reduce_alpha(const CurveParams& e, u64 p) {
    return ReducedPoint::affine(reduce_mod(e.c, p), mulmod(reduce_mod(e.c, p), reduce_mod(e.k, p), p));
}

/// E' over F_p: a' = -2a, b' = a^2 - 4b.
inline FpCurve isogenous(const FpCurve& E) {
    const u64 p = E.p();
    const u64 a2 = (2 * E.a()) % p;
    return FpCurve(p, (p - a2) % p, (mulmod(E.a(), E.a(), p) + p - mulmod(4 % p, E.b(), p)) % p);
}

/// phi: E -> E', (x, y) -> (y^2 / x^2, y (x^2 - b) / x^2); kernel {O, T}.
inline ReducedPoint phi(const FpCurve& E, const ReducedPoint& P) {
    const u64 p = E.p();
    if (P.inf || P.x == 0) return ReducedPoint::infinity();
    const u64 ix2 = invmod(mulmod(P.x, P.x, p), p);
    const u64 X = mulmod(mulmod(P.y, P.y, p), ix2, p);
    const u64 Y = mulmod(mulmod(P.y, (mulmod(P.x, P.x, p) + p - E.b()) % p, p), ix2, p);
    return ReducedPoint::affine(X, Y);
}

/// psi: E' -> E, (X, Y) -> (Y^2 / 4X^2, Y (X^2 - b') / 8X^2), the dual of phi.
inline ReducedPoint psi(const FpCurve& Eprime, const ReducedPoint& Q) {
    const u64 p = Eprime.p();
    if (Q.inf || Q.x == 0) return ReducedPoint::infinity();
    const u64 X2 = mulmod(Q.x, Q.x, p);
    const u64 i4 = invmod(mulmod(4 % p, X2, p), p);
    const u64 i8 = invmod(mulmod(8 % p, X2, p), p);
    const u64 x = mulmod(mulmod(Q.y, Q.y, p), i4, p);
    const u64 y = mulmod(mulmod(Q.y, (X2 + p - Eprime.b()) % p, p), i8, p);
    return ReducedPoint::affine(x, y);
}

namespace detail {

inline int legendre(u64 x, u64 p) {
    x %= p;
    if (x == 0) return 0;
    return powmod(x, (p - 1) / 2, p) == 1 ? 1 : -1;
}

// Tonelli-Shanks; x must be a non-zero square mod p.
inline u64 sqrt_mod(u64 x, u64 p) {
    if (p % 4 == 3) return powmod(x, (p + 1) / 4, p);
    u64 q = p - 1;
    int s = 0;
    while (q % 2 == 0) q /= 2, ++s;
    u64 z = 2;
    while (legendre(z, p) != -1) ++z;
    u64 m = static_cast<u64>(s), c = powmod(z, q, p), t = powmod(x, q, p), r = powmod(x, (q + 1) / 2, p);
    while (t != 1) {
        u64 i = 0, t2 = t;
        while (t2 != 1) t2 = mulmod(t2, t2, p), ++i;
        u64 bb = c;
        for (u64 j = 0; j + 1 < m - i; ++j) bb = mulmod(bb, bb, p);
        m = i;
        c = mulmod(bb, bb, p);
        t = mulmod(t, c, p);
        r = mulmod(r, bb, p);
    }
    return r;
}

// A random point of order > 2; gives up after a fixed number of draws (tiny
// fields may have no such point).
inline std::optional<ReducedPoint> random_point(const FpCurve& E, std::mt19937_64& rng) {
    std::uniform_int_distribution<u64> pick(0, E.p() - 1);
    for (int tries = 0; tries < 256; ++tries) {
        const u64 x = pick(rng);
        const u64 r = E.rhs(x);
        if (r == 0) continue;  // skip 2-torsion
        if (legendre(r, E.p()) != 1) continue;
        u64 y = sqrt_mod(r, E.p());
        if (rng() & 1) y = E.p() - y;
        return ReducedPoint::affine(x, y);
    }
    return std::nullopt;
}

struct HasseInterval {
    u64 lo, hi;
};

inline HasseInterval hasse_interval(u64 p) {
    // floor(2 sqrt p) computed exactly
    u64 w = static_cast<u64>(2.0 * std::sqrt(static_cast<double>(p)));
    while (w * w > 4 * p) --w;
    while ((w + 1) * (w + 1) <= 4 * p) ++w;
    return {p + 1 - w, p + 1 + w};
}

// Some n in [lo, hi] with nP = O (exists when #E lies in the interval).
inline std::optional<u64> bsgs_multiple(const FpCurve& E, const ReducedPoint& P, HasseInterval iv) {
    const u64 width = iv.hi - iv.lo + 1;
    u64 m = static_cast<u64>(std::ceil(std::sqrt(static_cast<double>(width))));
    if (m == 0) m = 1;
    // Baby steps jP, j in [0, m).
    std::vector<std::tuple<bool, u64, u64, u64>> baby;
    baby.reserve(m);
    ReducedPoint R = ReducedPoint::infinity();
    for (u64 j = 0; j < m; ++j) {
        baby.emplace_back(R.inf, R.x, R.y, j);
        R = E.add(R, P);
    }
    std::sort(baby.begin(), baby.end());
    const ReducedPoint step = R;  // mP
    ReducedPoint Q = E.mul(iv.lo, P);
    for (u64 i = 0; i * m < width; ++i) {
        const ReducedPoint target = E.neg(Q);
        auto it = std::lower_bound(baby.begin(), baby.end(), std::make_tuple(target.inf, target.x, target.y, u64{0}));
        if (it != baby.end() && std::get<0>(*it) == target.inf && std::get<1>(*it) == target.x &&
            std::get<2>(*it) == target.y) {
            const u64 n = iv.lo + i * m + std::get<3>(*it);
            if (n <= iv.hi) return n;
        }
        Q = E.add(Q, step);
    }
    return std::nullopt;
}

// Exact order of P given a multiple n of it.
inline u64 order_from_multiple(const FpCurve& E, const ReducedPoint& P, u64 n) {
    u64 ord = n;
    for (auto [q, e] : factorize_small(n)) {
        for (int i = 0; i < e; ++i) {
            if (!E.mul(ord / q, P).inf) break;
            ord /= q;
        }
    }
    return ord;
}

inline u64 lcm_u64(u64 x, u64 y) { return x / std::gcd(x, y) * y; }

}  // namespace detail

/// #E(F_p) by summing Legendre symbols; O(p).
inline u64 group_order_naive(const FpCurve& E) {
    const u64 p = E.p();
    std::int64_t n = static_cast<std::int64_t>(p) + 1;
    for (u64 x = 0; x < p; ++x) n += detail::legendre(E.rhs(x), p);
    return static_cast<u64>(n);
}

struct OrderOptions {
    u64 exhaustive_below = 1000;     ///< count points directly below this p
    u64 exhaustive_fallback = 10000; ///< last resort allowed below this p
    int max_points = 48;
    u64 seed = 1;
};

/// #E(F_p) for a curve with good reduction at the odd prime p.
inline u64 group_order(const FpCurve& E, const OrderOptions& opt = {}) {
    const u64 p = E.p();
    if (p < opt.exhaustive_below) return group_order_naive(E);
    const auto iv = detail::hasse_interval(p);
    std::mt19937_64 rng(opt.seed ^ (p * 0x9e3779b97f4a7c15ULL) ^ (E.a() << 20) ^ E.b());

    u64 nonres = 2;
    while (detail::legendre(nonres, p) != -1) ++nonres;
    const FpCurve tw = E.twist(nonres);

    u64 L = 2, Lt = 2;  // T and its twist image are 2-torsion
    auto count_candidates = [&](u64& only) {
        u64 count = 0;
        for (u64 n = (iv.lo + L - 1) / L * L; n <= iv.hi; n += L) {
            if ((2 * p + 2 - n) % Lt != 0) continue;
            only = n;
            if (++count > 1) break;
        }
        return count;
    };
    for (int i = 0; i < opt.max_points; ++i) {
        const bool on_twist = i % 3 == 2;
        const FpCurve& C = on_twist ? tw : E;
        const auto drawn = detail::random_point(C, rng);
        if (!drawn) break;
        const ReducedPoint P = *drawn;
        const auto n = detail::bsgs_multiple(C, P, iv);
        if (!n) throw contract_error("group_order: no multiple in the Hasse interval (p not prime?)");
        const u64 ord = detail::order_from_multiple(C, P, *n);
        (on_twist ? Lt : L) = detail::lcm_u64(on_twist ? Lt : L, ord);
        u64 only = 0;
        const u64 count = count_candidates(only);
        if (count == 1) return only;
        if (count == 0) throw contract_error("group_order: inconsistent orders at p = " + std::to_string(p));
    }
    if (p < opt.exhaustive_fallback) return group_order_naive(E);
    throw budget_error("group_order: ambiguous after " + std::to_string(opt.max_points) +
                       " points at p = " + std::to_string(p));
}

struct OddOrderResult {
    u64 N = 0;  ///< #E(F_p)
    int s = 0;  ///< N = 2^s m
    u64 m = 0;
    bool odd = false;
};

/// Whether alpha mod p has odd order: m alpha = O where m is the odd part of #E(F_p).
inline OddOrderResult odd_order_details(const CurveParams& e, u64 p, const OrderOptions& opt = {}) {
    const FpCurve E = reduce_curve(e, p);
    OddOrderResult r;
    r.N = group_order(E, opt);
    r.m = r.N;
    while (r.m % 2 == 0) r.m /= 2, ++r.s;
    r.odd = E.mul(r.m, reduce_alpha(e, p)).inf;
    return r;
}

inline bool has_odd_order(const CurveParams& e, u64 p, const OrderOptions& opt = {}) {
    return odd_order_details(e, p, opt).odd;
}

/// Exact order of P by repeated addition (test oracle scale only).
inline u64 point_order_naive(const FpCurve& E, const ReducedPoint& P) {
    u64 n = 1;
    for (ReducedPoint R = P; !R.inf; R = E.add(R, P)) ++n;
    return n;
}

// --- prime scan -------------------------------------------------------------

/// Primes up to n by a plain sieve.
inline std::vector<u64> small_primes(u64 n) {
    std::vector<bool> composite(n + 1, false);
    std::vector<u64> out;
    for (u64 i = 2; i <= n; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (u64 j = i * i; j <= n; j += i) composite[j] = true;
    }
    return out;
}

/// Primes in [lo, hi) given all primes up to sqrt(hi).
inline std::vector<u64> sieve_segment(u64 lo, u64 hi, const std::vector<u64>& base) {
    std::vector<bool> composite(hi - lo, false);
    for (u64 q : base) {
        if (q * q >= hi) break;
        u64 start = std::max(q * q, (lo + q - 1) / q * q);
        for (u64 j = start; j < hi; j += q) composite[j - lo] = true;
    }
    std::vector<u64> out;
    for (u64 n = std::max<u64>(lo, 2); n < hi; ++n)
        if (!composite[n - lo]) out.push_back(n);
    return out;
}

struct AuditLine {
    u64 p, N;
    int s;
    u64 m;
    bool odd;
};

inline std::string to_csv(const AuditLine& l) {
    return std::to_string(l.p) + "," + std::to_string(l.N) + "," + std::to_string(l.s) + "," + std::to_string(l.m) +
           "," + (l.odd ? "1" : "0");
}

struct ScanOptions {
    unsigned workers = 1;
    u64 seed = 1;
    bool audit = false;
    u64 segment = u64{1} << 18;
};

struct ScanReport {
    u64 x_max = 0;
    u64 primes_total = 0;  ///< pi(x), including 2 and the bad primes
    u64 primes_good = 0;
    u64 odd_count = 0;
    std::vector<AuditLine> audit;

    Rational ratio() const { return primes_total ? Rational(BigInt(odd_count), BigInt(primes_total)) : Rational(0); }
    double ratio_double() const { return primes_total ? double(odd_count) / double(primes_total) : 0.0; }
    std::string decimal(int digits = 6) const {
        std::ostringstream os;
        os << std::fixed << std::setprecision(digits) << ratio_double();
        return os.str();
    }
};

/// pi_S(x) / pi(x): odd-order good primes over all primes up to x_max.
/// Segments are dealt round-robin to workers and merged in segment order, so
/// the report does not depend on the worker count.
inline ScanReport empirical_density(const CurveParams& e, u64 x_max, const ScanOptions& opt = {}) {
    if (x_max < 1000) throw contract_error("empirical_density: x_max must be >= 1000");
    const u64 root = static_cast<u64>(std::sqrt(static_cast<double>(x_max))) + 2;
    const std::vector<u64> base = small_primes(root);
    const u64 seg = std::max<u64>(opt.segment, 1024);
    const u64 nseg = x_max / seg + 1;

    struct Part {
        u64 total = 0, good = 0, odd = 0;
        std::vector<AuditLine> audit;
    };
    std::vector<Part> parts(nseg);
    OrderOptions oo;
    oo.seed = opt.seed;

    auto run_segment = [&](u64 s) {
        const u64 lo = s * seg, hi = std::min(x_max + 1, lo + seg);
        Part& part = parts[s];
        for (u64 p : sieve_segment(lo, hi, base)) {
            ++part.total;
            if (!is_good_prime(e, p)) continue;
            ++part.good;
            const auto r = odd_order_details(e, p, oo);
            part.odd += r.odd;
            if (opt.audit) part.audit.push_back({p, r.N, r.s, r.m, r.odd});
        }
    };

    const unsigned workers = std::max(1u, opt.workers);
    if (workers == 1) {
        for (u64 s = 0; s < nseg; ++s) run_segment(s);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(workers);
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                try {
                    for (u64 s = w; s < nseg; s += workers) run_segment(s);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        for (auto& t : pool) t.join();
        for (auto& err : errors)
            if (err) std::rethrow_exception(err);
    }

    ScanReport rep;
    rep.x_max = x_max;
    for (auto& part : parts) {
        rep.primes_total += part.total;
        rep.primes_good += part.good;
        rep.odd_count += part.odd;
        for (auto& l : part.audit) rep.audit.push_back(l);
    }
    return rep;
}

}  // namespace oddorder
