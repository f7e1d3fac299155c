#pragma once

#include "wallis/bernoulli.hpp"
#include "wallis/constants.hpp"

namespace wallis {

// ln Gamma over the positive reals: shift the argument up with the functional
// equation until Stirling's series applies, then
//   ln Gamma(y) = (y - 1/2) ln y - y + ln(2 pi)/2
//                 + sum_k B_{2k} / (2k (2k-1) y^(2k-1)) + R,
// |R| <= 2 |first omitted term| for real y > 0 (the series brackets the
// truth; same complete-monotonicity argument as in hurwitz.hpp).
inline Ball lngamma(const Ball& x, const PrecCtx& caller) {
    if (!x.strictly_positive())
        throw DomainError("lngamma requires a strictly positive interval");

    PrecCtx ctx = caller.with_guard(16);
    const long p = ctx.prec_bits;
    const double threshold = std::max(20.0, 0.2 * double(p));

    double lo = x.mid_approx() - x.rad_approx();
    long shift = lo >= threshold ? 0 : static_cast<long>(threshold - lo) + 1;

    // Gamma(x) = Gamma(x + shift) / (x (x+1) ... (x+shift-1))
    Ball corr = Ball::zero(ctx);
    if (shift > 0) {
        Ball prod = round_to(x, ctx);
        for (long t = 1; t < shift; ++t)
            prod = mul(prod, add(x, Ball::exact_int(t, ctx), ctx), ctx);
        corr = ln(prod, ctx);
    }
    Ball y = add(x, Ball::exact_int(shift, ctx), ctx);

    Ball lny = ln(y, ctx);
    Ball main = sub(mul(sub(y, Ball::exact(Rat(1, 2), ctx), ctx), lny, ctx), y, ctx);
    Ball ln2pi = ln(mul_2exp(const_pi(ctx), 1), ctx);
    main = add(main, mul_2exp(ln2pi, -1), ctx);

    long scale_exp = mpfr_zero_p(main.mid().get()) ? 0 : mpfr_get_exp(main.mid().get());
    detail::Real cut(detail::kRadPrec);
    mpfr_set_ui_2exp(cut.get(), 1, scale_exp - p - 8, MPFR_RNDU);

    Ball yinv2 = powi(y, -2, ctx);
    Ball ypow = powi(y, -1, ctx);  // y^(1-2k) at k=1
    detail::Real prev(detail::kRadPrec);
    mpfr_set_inf(prev.get(), 1);
    const long m_max = 2 * p + 64;
    bool converged = false;
    for (long k = 1; k <= m_max; ++k) {
        Rat coef = BernoulliTable::get(2 * k) / Rat(BigInt(2 * k) * BigInt(2 * k - 1));
        Ball term = mul(Ball::exact(coef, ctx), ypow, ctx);

        detail::Real bound(detail::kRadPrec);
        mpfr_abs(bound.get(), term.mid().get(), MPFR_RNDU);
        mpfr_add(bound.get(), bound.get(), term.rad().get(), MPFR_RNDU);
        if (mpfr_cmp(bound.get(), cut.get()) < 0) {
            detail::Real rem(detail::kRadPrec);
            mpfr_mul_2si(rem.get(), bound.get(), 1, MPFR_RNDU);
            main.inflate(rem);
            converged = true;
            break;
        }
        if (k > 4 && mpfr_cmp(bound.get(), prev.get()) > 0) break;
        mpfr_set(prev.get(), bound.get(), MPFR_RNDU);

        main = add(main, term, ctx);
        ypow = mul(ypow, yinv2, ctx);
    }
    if (!converged) throw ToleranceNotMet("Stirling series did not converge");

    return round_to(sub(main, corr, ctx), caller);
}

// Residual of Euler's reflection formula: Gamma(z) Gamma(1-z) sin(pi z)/pi - 1.
// Contains zero iff the implementation satisfies the identity at z.
inline Ball check_reflection(const Rat& z, const PrecCtx& caller) {
    if (z.is_integer()) throw DomainError("reflection formula needs non-integer z");
    Rat zr = z - Rat(z.floor());  // reduce to (0, 1)
    PrecCtx ctx = caller.with_guard(16);
    Ball lg = add(lngamma(Ball::exact(zr, ctx), ctx),
                  lngamma(Ball::exact(Rat(1) - zr, ctx), ctx), ctx);
    Ball lhs = mul(exp(lg, ctx), sin_pi(zr, ctx), ctx);
    Ball res = sub(div(lhs, const_pi(ctx), ctx), Ball::exact_int(1, ctx), ctx);
    return round_to(res, caller);
}

}  // namespace wallis
