#pragma once

#include <utility>

#include "wallis/ball.hpp"
#include "wallis/bernoulli.hpp"

namespace wallis {

namespace detail {

inline Ball pow_ball_rat_neg(const Ball& base, const Rat& s, const PrecCtx& ctx) {
    // base^(-s) for strictly positive base
    if (s.is_integer() && s.num() <= 4096 && s.num() >= -4096)
        return powi(base, -static_cast<long>(s.num()), ctx);
    return pow_rat(base, -s, ctx);
}

struct HurwitzResult {
    Ball value;
    Ball sderiv;
};

// Euler-Maclaurin evaluation of zeta(s,a) = sum_{k>=0} (a+k)^(-s), s > 1.
//
// f(x) = (a+x)^(-s) is completely monotone, so after the correction term of
// order m the remainder satisfies |R| <= |t_{m+1}| + |B_{2m+2}|/(2m+2)! *
// int_N^inf |f^(2m+2)| = 2 |t_{m+1}|: twice the first omitted term.
//
// For the s-derivative, with f^(2M)(x) = (s)_{2M} (a+x)^(-s-2M),
//   |d/ds f^(2M)(x)| <= (s)_{2M} (a+x)^(-s-2M) (P + ln(a+x)),
//       P = sum_{t<2M} 1/(s+t),
//   int_N^inf |d/ds f^(2M)| <= (s)_{2M} c^(1-s-2M) [ (P + ln c)/(s+2M-1)
//                                                    + 1/(s+2M-1)^2 ],
// with c = a+N >= 1, which gives |R'| <= |first omitted d-term| + that bound.
inline HurwitzResult hurwitz_em(const Rat& s, const Ball& a, const PrecCtx& caller,
                                bool want_deriv) {
    if (!(s > Rat(1))) throw DomainError("hurwitz_zeta requires s > 1");
    if (!a.strictly_positive()) throw DomainError("hurwitz_zeta requires a > 0");

    PrecCtx ctx = caller.with_guard(16);
    const long p = ctx.prec_bits;
    double s_d = double(s.num()) / double(s.den());
    double a_lo = a.mid_approx() - a.rad_approx();

    double needed = std::max({16.0, 0.3 * double(p), 1.2 * s_d});
    for (int attempt = 0;; ++attempt) {
        long N = std::max<long>(0, static_cast<long>(needed - a_lo) + 1);

        Ball direct = Ball::zero(ctx);
        Ball ddirect = Ball::zero(ctx);
        for (long k = 0; k < N; ++k) {
            Ball ak = add(a, Ball::exact_int(k, ctx), ctx);
            Ball term = pow_ball_rat_neg(ak, s, ctx);
            direct = add(direct, term, ctx);
            if (want_deriv) ddirect = sub(ddirect, mul(ln(ak, ctx), term, ctx), ctx);
        }

        Ball c = add(a, Ball::exact_int(N, ctx), ctx);
        Ball lnc = ln(c, ctx);
        Ball c_pow = pow_rat(c, Rat(1) - s, ctx);  // c^(1-s)
        Ball cinv2 = powi(c, -2, ctx);
        Ball sm1 = Ball::exact(s - Rat(1), ctx);

        Ball integral = div(c_pow, sm1, ctx);
        Ball half = mul_2exp(pow_ball_rat_neg(c, s, ctx), -1);
        Ball sum = add(add(direct, integral, ctx), half, ctx);
        Ball dsum = ddirect;
        if (want_deriv) {
            // d/ds [c^(1-s)/(s-1)] = -c^(1-s) ln c/(s-1) - c^(1-s)/(s-1)^2
            Ball t1 = neg(div(mul(c_pow, lnc, ctx), sm1, ctx));
            Ball t2 = neg(div(c_pow, mul(sm1, sm1, ctx), ctx));
            Ball t3 = neg(mul(lnc, half, ctx));
            dsum = add(add(dsum, add(t1, t2, ctx), ctx), t3, ctx);
        }

        long scale_exp = mpfr_zero_p(sum.mid().get()) ? 0 : mpfr_get_exp(sum.mid().get());
        Real cut(kRadPrec);
        mpfr_set_ui_2exp(cut.get(), 1, scale_exp - p - 8, MPFR_RNDU);

        Ball cpow = mul(c_pow, cinv2, ctx);  // c^(1-s-2k) at k=1
        Rat poch = s;                        // (s)_{2k-1} at k=1
        Rat hsum = Rat(1) / s;               // sum_{t<2k-1} 1/(s+t) at k=1
        BigInt fact = 2;                     // (2k)! at k=1
        bool converged = false;
        Real prev_bound(kRadPrec);
        mpfr_set_inf(prev_bound.get(), 1);
        const long m_max = 2 * p + 64;
        for (long k = 1; k <= m_max; ++k) {
            Rat coef = BernoulliTable::get(2 * k) / Rat(fact) * poch;
            Ball term = mul(Ball::exact(coef, ctx), cpow, ctx);

            Real bound(kRadPrec);
            mpfr_abs(bound.get(), term.mid().get(), MPFR_RNDU);
            mpfr_add(bound.get(), bound.get(), term.rad().get(), MPFR_RNDU);

            if (mpfr_cmp(bound.get(), cut.get()) < 0) {
                Real rem(kRadPrec);
                mpfr_mul_2si(rem.get(), bound.get(), 1, MPFR_RNDU);
                sum.inflate(rem);
                if (want_deriv) {
                    Rat P = hsum + Rat(1) / (s + Rat(2 * k - 1));
                    Rat s2m1 = s + Rat(2 * k - 1);
                    Ball dterm = mul(term, add(lnc, Ball::exact(hsum, ctx), ctx), ctx);
                    Rat poch2m = poch * s2m1;  // (s)_{2M}
                    Ball ib = mul(Ball::exact(BernoulliTable::get(2 * k).abs() / Rat(fact) *
                                                  poch2m,
                                              ctx),
                                  cpow, ctx);
                    Ball bracket = add(div(add(Ball::exact(P, ctx), lnc, ctx),
                                           Ball::exact(s2m1, ctx), ctx),
                                       Ball::exact(Rat(1) / (s2m1 * s2m1), ctx), ctx);
                    ib = mul(ib, bracket, ctx);
                    Real dr(kRadPrec), t1(kRadPrec);
                    mpfr_abs(dr.get(), dterm.mid().get(), MPFR_RNDU);
                    mpfr_add(dr.get(), dr.get(), dterm.rad().get(), MPFR_RNDU);
                    mpfr_abs(t1.get(), ib.mid().get(), MPFR_RNDU);
                    mpfr_add(dr.get(), dr.get(), t1.get(), MPFR_RNDU);
                    mpfr_add(dr.get(), dr.get(), ib.rad().get(), MPFR_RNDU);
                    dsum.inflate(dr);
                }
                converged = true;
                break;
            }
            if (k > 4 && mpfr_cmp(bound.get(), prev_bound.get()) > 0) break;  // diverging
            mpfr_set(prev_bound.get(), bound.get(), MPFR_RNDU);

            sum = add(sum, term, ctx);
            if (want_deriv)
                dsum = add(dsum, mul(term, sub(Ball::exact(hsum, ctx), lnc, ctx), ctx), ctx);

            poch = poch * (s + Rat(2 * k - 1)) * (s + Rat(2 * k));
            hsum = hsum + Rat(1) / (s + Rat(2 * k - 1)) + Rat(1) / (s + Rat(2 * k));
            fact = fact * (2 * k + 1) * (2 * k + 2);
            cpow = mul(cpow, cinv2, ctx);
        }
        if (converged) {
            HurwitzResult r{round_to(sum, caller), Ball::zero(caller)};
            if (want_deriv) r.sderiv = round_to(dsum, caller);
            return r;
        }
        if (attempt >= 3)
            throw ToleranceNotMet("hurwitz_zeta correction series did not converge");
        needed *= 2;
    }
}

}  // namespace detail

// Hurwitz zeta for rational s > 1 and a strictly positive interval a.
inline Ball hurwitz_zeta(const Rat& s, const Ball& a, const PrecCtx& ctx) {
    return detail::hurwitz_em(s, a, ctx, false).value;
}

// zeta(s, a) together with its s-derivative.
inline std::pair<Ball, Ball> hurwitz_zeta_with_sderiv(const Rat& s, const Ball& a,
                                                      const PrecCtx& ctx) {
    auto r = detail::hurwitz_em(s, a, ctx, true);
    return {r.value, r.sderiv};
}

}  // namespace wallis
