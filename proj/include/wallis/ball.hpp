#pragma once

#include <gmp.h>
#include <mpfr.h>

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "wallis/errors.hpp"
#include "wallis/rat.hpp"

namespace wallis {

// Working precision plus the absolute tolerance the caller wants certified.
struct PrecCtx {
    long prec_bits = 128;
    double target_abs_tol = 1e-25;

    PrecCtx() = default;
    PrecCtx(long bits, double tol) : prec_bits(bits), target_abs_tol(tol) {
        if (bits < 16) throw DomainError("prec_bits must be >= 16");
        if (!(tol > 0)) throw DomainError("target_abs_tol must be positive");
    }
    PrecCtx with_guard(long extra) const { return PrecCtx(prec_bits + extra, target_abs_tol); }
};

namespace detail {

// RAII wrapper for a single mpfr value.
class Real {
  public:
    explicit Real(long prec) { mpfr_init2(v_, std::max(prec, long(MPFR_PREC_MIN))); }
    Real(const Real& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Real(Real&& o) noexcept {
        mpfr_init2(v_, MPFR_PREC_MIN);
        mpfr_swap(v_, o.v_);
    }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    long prec() const { return mpfr_get_prec(v_); }

  private:
    mpfr_t v_;
};

struct BallBuilder;

inline constexpr long kRadPrec = 32;

// mpq_t holder for exact Rat -> mpfr conversions.
class Mpq {
  public:
    explicit Mpq(const Rat& r) {
        mpq_init(q_);
        set_mpz(mpq_numref(q_), r.num());
        set_mpz(mpq_denref(q_), r.den());
        // inputs are already normalized with positive denominator
    }
    ~Mpq() { mpq_clear(q_); }
    Mpq(const Mpq&) = delete;
    Mpq& operator=(const Mpq&) = delete;
    mpq_srcptr get() const { return q_; }

    static void set_mpz(mpz_ptr out, const BigInt& v) {
        if (v == 0) {
            mpz_set_ui(out, 0);
            return;
        }
        std::vector<unsigned char> bytes;
        boost::multiprecision::export_bits(v, std::back_inserter(bytes), 8);
        mpz_import(out, bytes.size(), 1, 1, 0, 0, bytes.data());
        if (v < 0) mpz_neg(out, out);
    }

  private:
    mpq_t q_;
};

}  // namespace detail

// Arbitrary-precision real with a certified absolute error radius.
// Invariant: the exact result of every operation, applied to any points of
// the input intervals, lies in [mid - rad, mid + rad]. rad >= 0, finite.
// mid carries the working precision; rad is a 32-bit upper bound.
class Ball {
  public:
    Ball() : mid_(MPFR_PREC_MIN), rad_(detail::kRadPrec) { set_zero_(); }

    static Ball zero(const PrecCtx& ctx) {
        Ball b(ctx.prec_bits);
        b.set_zero_();
        return b;
    }

    static Ball exact_int(long n, const PrecCtx& ctx) {
        Ball b(ctx.prec_bits);
        int t = mpfr_set_si(b.mid_.get(), n, MPFR_RNDN);
        b.set_rad_round_err_(t);
        return b;
    }

    static Ball exact(const Rat& r, const PrecCtx& ctx) {
        Ball b(ctx.prec_bits);
        detail::Mpq q(r);
        int t = mpfr_set_q(b.mid_.get(), q.get(), MPFR_RNDN);
        b.set_rad_round_err_(t);
        return b;
    }

    const detail::Real& mid() const { return mid_; }
    const detail::Real& rad() const { return rad_; }
    long prec() const { return mid_.prec(); }

    bool is_finite() const {
        return mpfr_number_p(mid_.get()) && mpfr_number_p(rad_.get());
    }
    bool is_exact() const { return mpfr_zero_p(rad_.get()); }
    bool contains_zero() const { return mpfr_cmpabs(mid_.get(), rad_.get()) <= 0; }

    // Certified sign tests (conservative: false near the boundary).
    bool strictly_positive() const {
        detail::Real t(64);
        mpfr_sub(t.get(), mid_.get(), rad_.get(), MPFR_RNDD);
        return mpfr_sgn(t.get()) > 0;
    }
    bool strictly_negative() const {
        detail::Real t(64);
        mpfr_add(t.get(), mid_.get(), rad_.get(), MPFR_RNDU);
        return mpfr_sgn(t.get()) < 0;
    }

    double mid_approx() const { return mpfr_get_d(mid_.get(), MPFR_RNDN); }
    double rad_approx() const { return mpfr_get_d(rad_.get(), MPFR_RNDU); }

    bool rad_le(double tol) const { return mpfr_cmp_d(rad_.get(), tol) <= 0; }

    friend Ball neg(Ball x) {
        mpfr_neg(x.mid_.get(), x.mid_.get(), MPFR_RNDN);  // exact
        return x;
    }

    // Exact scaling by 2^e.
    friend Ball mul_2exp(Ball x, long e) {
        mpfr_mul_2si(x.mid_.get(), x.mid_.get(), e, MPFR_RNDN);
        mpfr_mul_2si(x.rad_.get(), x.rad_.get(), e, MPFR_RNDU);
        return x;
    }

    friend Ball add(const Ball& a, const Ball& b, const PrecCtx& ctx) {
        Ball r(ctx.prec_bits);
        int t = mpfr_add(r.mid_.get(), a.mid_.get(), b.mid_.get(), MPFR_RNDN);
        mpfr_add(r.rad_.get(), a.rad_.get(), b.rad_.get(), MPFR_RNDU);
        r.add_round_err_(t);
        return r;
    }

    friend Ball sub(const Ball& a, const Ball& b, const PrecCtx& ctx) {
        Ball r(ctx.prec_bits);
        int t = mpfr_sub(r.mid_.get(), a.mid_.get(), b.mid_.get(), MPFR_RNDN);
        mpfr_add(r.rad_.get(), a.rad_.get(), b.rad_.get(), MPFR_RNDU);
        r.add_round_err_(t);
        return r;
    }

    // |xy - mx my| <= |mx| rb + |my| ra + ra rb
    friend Ball mul(const Ball& a, const Ball& b, const PrecCtx& ctx) {
        Ball r(ctx.prec_bits);
        int t = mpfr_mul(r.mid_.get(), a.mid_.get(), b.mid_.get(), MPFR_RNDN);
        detail::Real u(detail::kRadPrec), w(detail::kRadPrec);
        mpfr_abs(u.get(), a.mid_.get(), MPFR_RNDU);
        mpfr_mul(u.get(), u.get(), b.rad_.get(), MPFR_RNDU);
        mpfr_abs(w.get(), b.mid_.get(), MPFR_RNDU);
        mpfr_mul(w.get(), w.get(), a.rad_.get(), MPFR_RNDU);
        mpfr_add(u.get(), u.get(), w.get(), MPFR_RNDU);
        mpfr_mul(w.get(), a.rad_.get(), b.rad_.get(), MPFR_RNDU);
        mpfr_add(r.rad_.get(), u.get(), w.get(), MPFR_RNDU);
        r.add_round_err_(t);
        return r;
    }

    // |x/y - mx/my| <= (|mx| rb + |my| ra) / (|my| (|my| - rb))
    friend Ball div(const Ball& a, const Ball& b, const PrecCtx& ctx) {
        detail::Real ylo(detail::kRadPrec);
        mpfr_abs(ylo.get(), b.mid_.get(), MPFR_RNDD);
        mpfr_sub(ylo.get(), ylo.get(), b.rad_.get(), MPFR_RNDD);
        if (mpfr_sgn(ylo.get()) <= 0)
            throw DomainError("division by an interval containing zero");
        Ball r(ctx.prec_bits);
        int t = mpfr_div(r.mid_.get(), a.mid_.get(), b.mid_.get(), MPFR_RNDN);
        detail::Real num(detail::kRadPrec), den(detail::kRadPrec), w(detail::kRadPrec);
        mpfr_abs(num.get(), a.mid_.get(), MPFR_RNDU);
        mpfr_mul(num.get(), num.get(), b.rad_.get(), MPFR_RNDU);
        mpfr_abs(w.get(), b.mid_.get(), MPFR_RNDU);
        mpfr_mul(w.get(), w.get(), a.rad_.get(), MPFR_RNDU);
        mpfr_add(num.get(), num.get(), w.get(), MPFR_RNDU);
        mpfr_abs(den.get(), b.mid_.get(), MPFR_RNDD);
        mpfr_mul(den.get(), den.get(), ylo.get(), MPFR_RNDD);
        mpfr_div(r.rad_.get(), num.get(), den.get(), MPFR_RNDU);
        r.add_round_err_(t);
        return r;
    }

    friend Ball ln(const Ball& x, const PrecCtx& ctx) {
        detail::Real lo(detail::kRadPrec);
        mpfr_sub(lo.get(), x.mid_.get(), x.rad_.get(), MPFR_RNDD);
        if (mpfr_sgn(lo.get()) <= 0)
            throw DomainError("log of an interval touching (-inf, 0]");
        Ball r(ctx.prec_bits);
        int t = mpfr_log(r.mid_.get(), x.mid_.get(), MPFR_RNDN);
        // |ln| has derivative <= 1/lo on the interval
        mpfr_div(r.rad_.get(), x.rad_.get(), lo.get(), MPFR_RNDU);
        r.add_round_err_(t);
        return r;
    }

    friend Ball exp(const Ball& x, const PrecCtx& ctx) {
        Ball r(ctx.prec_bits);
        int t = mpfr_exp(r.mid_.get(), x.mid_.get(), MPFR_RNDN);
        detail::Real hi(detail::kRadPrec);
        mpfr_add(hi.get(), x.mid_.get(), x.rad_.get(), MPFR_RNDU);
        mpfr_exp(hi.get(), hi.get(), MPFR_RNDU);
        mpfr_mul(r.rad_.get(), hi.get(), x.rad_.get(), MPFR_RNDU);
        r.add_round_err_(t);
        if (!r.is_finite()) throw DomainError("exp overflow");
        return r;
    }

    // 1-Lipschitz, so the input radius passes through unchanged.
    friend Ball sin_ball(const Ball& x, const PrecCtx& ctx) {
        Ball r(ctx.prec_bits);
        int t = mpfr_sin(r.mid_.get(), x.mid_.get(), MPFR_RNDN);
        mpfr_set(r.rad_.get(), x.rad_.get(), MPFR_RNDU);
        r.add_round_err_(t);
        return r;
    }

    friend Ball sqrt(const Ball& x, const PrecCtx& ctx) {
        if (mpfr_zero_p(x.mid_.get()) && x.is_exact()) return zero(ctx);
        detail::Real lo(detail::kRadPrec);
        mpfr_sub(lo.get(), x.mid_.get(), x.rad_.get(), MPFR_RNDD);
        if (mpfr_sgn(lo.get()) <= 0)
            throw DomainError("sqrt of an interval touching (-inf, 0]");
        Ball r(ctx.prec_bits);
        int t = mpfr_sqrt(r.mid_.get(), x.mid_.get(), MPFR_RNDN);
        mpfr_sqrt(lo.get(), lo.get(), MPFR_RNDD);
        mpfr_mul_2si(lo.get(), lo.get(), 1, MPFR_RNDD);
        mpfr_div(r.rad_.get(), x.rad_.get(), lo.get(), MPFR_RNDU);
        r.add_round_err_(t);
        return r;
    }

    friend Ball powi(const Ball& x, long n, const PrecCtx& ctx);
    friend Ball pow_rat(const Ball& x, const Rat& e, const PrecCtx& ctx);

    // Re-round mid to the context precision (for cache normalization).
    friend Ball round_to(const Ball& x, const PrecCtx& ctx) {
        Ball r(ctx.prec_bits);
        int t = mpfr_set(r.mid_.get(), x.mid_.get(), MPFR_RNDN);
        mpfr_set(r.rad_.get(), x.rad_.get(), MPFR_RNDU);
        r.add_round_err_(t);
        return r;
    }

    // Widen the radius by an upper bound given as a low-precision real.
    void inflate(const detail::Real& extra) {
        mpfr_add(rad_.get(), rad_.get(), extra.get(), MPFR_RNDU);
    }
    void inflate_2exp(long e) {  // add 2^e to rad
        detail::Real t(detail::kRadPrec);
        mpfr_set_ui_2exp(t.get(), 1, e, MPFR_RNDU);
        inflate(t);
    }

    // True separation: the intervals certainly do not touch.
    friend bool surely_disjoint(const Ball& a, const Ball& b) {
        detail::Real d(detail::kRadPrec), s(detail::kRadPrec);
        mpfr_sub(d.get(), a.mid_.get(), b.mid_.get(), MPFR_RNDZ);  // toward 0: lower bound on |diff|
        mpfr_abs(d.get(), d.get(), MPFR_RNDZ);
        mpfr_add(s.get(), a.rad_.get(), b.rad_.get(), MPFR_RNDU);
        return mpfr_cmp(d.get(), s.get()) > 0;
    }

    // Certified overlap (conservative).
    friend bool surely_overlap(const Ball& a, const Ball& b) {
        detail::Real d(detail::kRadPrec), s(detail::kRadPrec);
        mpfr_sub(d.get(), a.mid_.get(), b.mid_.get(), MPFR_RNDA);  // away from 0: upper bound on |diff|
        mpfr_abs(d.get(), d.get(), MPFR_RNDU);
        mpfr_add(s.get(), a.rad_.get(), b.rad_.get(), MPFR_RNDD);
        return mpfr_cmp(d.get(), s.get()) <= 0;
    }

    // Certified containment of an exact rational.
    friend bool surely_contains(const Ball& b, const Rat& r) {
        detail::Mpq q(r);
        detail::Real d(detail::kRadPrec);
        mpfr_sub_q(d.get(), b.mid_.get(), q.get(), MPFR_RNDA);
        mpfr_abs(d.get(), d.get(), MPFR_RNDU);
        return mpfr_cmp(d.get(), b.rad_.get()) <= 0;
    }

    // |a - b| <= a.rad + b.rad + slack, certified from above.
    friend bool agree_within(const Ball& a, const Ball& b, double slack) {
        detail::Real d(detail::kRadPrec), s(detail::kRadPrec);
        mpfr_sub(d.get(), a.mid_.get(), b.mid_.get(), MPFR_RNDA);
        mpfr_abs(d.get(), d.get(), MPFR_RNDU);
        mpfr_add(s.get(), a.rad_.get(), b.rad_.get(), MPFR_RNDD);
        if (slack > 0) {
            detail::Real t(detail::kRadPrec);
            mpfr_set_d(t.get(), slack, MPFR_RNDD);
            mpfr_add(s.get(), s.get(), t.get(), MPFR_RNDD);
        }
        return mpfr_cmp(d.get(), s.get()) <= 0;
    }

    // Bit-identical comparison, for determinism tests.
    friend bool identical(const Ball& a, const Ball& b) {
        return mpfr_equal_p(a.mid_.get(), b.mid_.get()) &&
               mpfr_equal_p(a.rad_.get(), b.rad_.get()) &&
               !(mpfr_nan_p(a.mid_.get()) || mpfr_nan_p(b.mid_.get()));
    }

    std::string str(long max_digits = 0) const;

    friend std::ostream& operator<<(std::ostream& os, const Ball& b) {
        return os << b.str();
    }

  private:
    friend struct detail::BallBuilder;

    explicit Ball(long prec) : mid_(prec), rad_(detail::kRadPrec) { set_zero_(); }

    void set_zero_() {
        mpfr_set_zero(mid_.get(), 1);
        mpfr_set_zero(rad_.get(), 1);
    }

    // Round-to-nearest error of the last op on mid: 0 if exact, else one ulp.
    void add_round_err_(int ternary) {
        if (ternary == 0) return;
        detail::Real e(detail::kRadPrec);
        if (mpfr_zero_p(mid_.get())) {
            mpfr_set_ui_2exp(e.get(), 1, mpfr_get_emin(), MPFR_RNDU);
        } else {
            mpfr_set_ui_2exp(e.get(), 1, mpfr_get_exp(mid_.get()) - mid_.prec(), MPFR_RNDU);
        }
        mpfr_add(rad_.get(), rad_.get(), e.get(), MPFR_RNDU);
    }
    void set_rad_round_err_(int ternary) {
        mpfr_set_zero(rad_.get(), 1);
        add_round_err_(ternary);
    }

    detail::Real mid_;
    detail::Real rad_;
};

namespace detail {
// Wraps a correctly-rounded nullary mpfr function (mpfr_const_*) as a Ball.
struct BallBuilder {
    template <typename F>
    static Ball correctly_rounded(long prec, F&& op) {
        Ball b(prec);
        int t = op(b.mid_.get(), MPFR_RNDN);
        b.set_rad_round_err_(t);
        return b;
    }
};
}  // namespace detail

inline Ball powi(const Ball& x, long n, const PrecCtx& ctx) {
    if (n == 0) return Ball::exact_int(1, ctx);
    if (n < 0) return div(Ball::exact_int(1, ctx), powi(x, -n, ctx), ctx);
    Ball acc = Ball::exact_int(1, ctx);
    Ball base = round_to(x, ctx);
    unsigned long m = n;
    while (m) {
        if (m & 1) acc = mul(acc, base, ctx);
        m >>= 1;
        if (m) base = mul(base, base, ctx);
    }
    return acc;
}

inline Ball pow_rat(const Ball& x, const Rat& e, const PrecCtx& ctx) {
    if (e.is_integer()) {
        BigInt n = e.num();
        if (n >= -(1L << 40) && n <= (1L << 40))
            return powi(x, static_cast<long>(n), ctx);
    }
    if (mpfr_zero_p(x.mid().get()) && x.is_exact()) {
        if (e.sign() > 0) return Ball::zero(ctx);
        throw DomainError("0 raised to a non-positive fractional power");
    }
    return exp(mul(Ball::exact(e, ctx), ln(x, ctx), ctx), ctx);
}

// "mid to d certified digits ± rad", rad to two digits, scientific.
inline std::string Ball::str(long max_digits) const {
    if (!is_finite()) return "nan";
    long full = std::max<long>(2, static_cast<long>(double(prec()) * 0.30103));
    if (max_digits > 0) full = std::min(full, max_digits);

    auto format_digits = [](const char* digits, mpfr_exp_t e10, bool negative) {
        std::string ds(digits);
        std::string out = negative ? "-" : "";
        long n = static_cast<long>(ds.size());
        if (e10 >= 1 && e10 <= n + 4 && e10 <= 21) {
            if (e10 >= n) {
                out += ds + std::string(e10 - n, '0');
            } else {
                out += ds.substr(0, e10) + "." + ds.substr(e10);
            }
        } else if (e10 <= 0 && e10 > -4) {
            out += "0." + std::string(-e10, '0') + ds;
        } else {
            out += ds.substr(0, 1);
            if (n > 1) out += "." + ds.substr(1);
            out += "e" + std::to_string(e10 - 1);
        }
        return out;
    };

    auto rad_str = [](mpfr_srcptr r) -> std::string {
        if (mpfr_zero_p(r)) return "0";
        mpfr_exp_t e10 = 0;
        char* s = mpfr_get_str(nullptr, &e10, 10, 2, r, MPFR_RNDU);
        std::string ds(s);
        mpfr_free_str(s);
        std::string out;
        out += ds[0];
        out += ".";
        out += ds.size() > 1 ? ds[1] : '0';
        out += "e" + std::to_string(e10 - 1);
        return out;
    };

    if (mpfr_zero_p(mid_.get())) return "0 ± " + rad_str(rad_.get());

    long d = full;
    detail::Real disp_err(detail::kRadPrec);
    if (!mpfr_zero_p(rad_.get())) {
        // largest d with half a unit in the last place >= rad
        detail::Real t(64);
        mpfr_abs(t.get(), mid_.get(), MPFR_RNDD);
        mpfr_div(t.get(), t.get(), rad_.get(), MPFR_RNDD);
        mpfr_log10(t.get(), t.get(), MPFR_RNDD);
        long cert = mpfr_get_si(t.get(), MPFR_RNDD);  // floor(log10(|mid|/rad))
        d = std::clamp(cert, 1L, full);
    }

    bool negative = mpfr_sgn(mid_.get()) < 0;
    mpfr_exp_t e10 = 0;
    char* s = mpfr_get_str(nullptr, &e10, 10, d, mid_.get(), MPFR_RNDN);
    std::string digits(s);
    mpfr_free_str(s);
    if (!digits.empty() && digits[0] == '-') digits.erase(0, 1);

    // display error: radius plus half a unit in the last printed place
    detail::Real half_ulp(detail::kRadPrec), tot(detail::kRadPrec);
    mpfr_set_ui(half_ulp.get(), 10, MPFR_RNDU);
    mpfr_pow_si(half_ulp.get(), half_ulp.get(), e10 - d, MPFR_RNDU);
    mpfr_div_2ui(half_ulp.get(), half_ulp.get(), 1, MPFR_RNDU);
    mpfr_add(tot.get(), rad_.get(), half_ulp.get(), MPFR_RNDU);

    return format_digits(digits.c_str(), e10, negative) + " ± " + rad_str(tot.get());
}

}  // namespace wallis
