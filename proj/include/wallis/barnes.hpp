#pragma once

#include "wallis/gamma.hpp"
#include "wallis/hurwitz.hpp"

namespace wallis {

namespace detail {

// ln G(z+1) for z in (0, 1] (plus interval slack), straight from the
// Weierstrass product:
//   ln G(z+1) = (z/2) ln 2pi - (z + z^2(1+gamma))/2
//               + sum_{n=1}^N [ n ln(1+z/n) + z^2/(2n) - z ]  + tail,
//   tail = sum_{j>=3} (-1)^(j-1) z^j/j * zeta(j-1, N+1),
// truncated at j = J with the geometric majorant
//   sum_{j>J} |z|^j zeta(j-1,N+1)/j <= (N+1)^2 q^(J+1) / (1-q),  q = |z|/(N+1).
inline Ball barnes_lng_window(const Ball& z, const PrecCtx& ctx) {
    const long p = ctx.prec_bits;
    const long N = std::max<long>(24, p / 5);

    Ball ln2pi = ln(mul_2exp(const_pi(ctx), 1), ctx);
    Ball z2 = mul(z, z, ctx);
    Ball head = mul_2exp(mul(z, ln2pi, ctx), -1);
    Ball one_g = add(Ball::exact_int(1, ctx), const_gamma(ctx), ctx);
    head = sub(head, mul_2exp(add(z, mul(z2, one_g, ctx), ctx), -1), ctx);

    Ball series = Ball::zero(ctx);
    for (long n = 1; n <= N; ++n) {
        Ball zn = mul(z, Ball::exact(Rat(1, n), ctx), ctx);
        Ball t = mul(Ball::exact_int(n, ctx), ln(add(Ball::exact_int(1, ctx), zn, ctx), ctx),
                     ctx);
        t = add(t, mul(z2, Ball::exact(Rat(1, 2 * n), ctx), ctx), ctx);
        t = sub(t, z, ctx);
        series = add(series, t, ctx);
    }

    // tail in Hurwitz-zeta form
    Real q(kRadPrec), geo(kRadPrec), cut(kRadPrec), tmp(kRadPrec);
    mpfr_add(q.get(), z.mid().get(), z.rad().get(), MPFR_RNDU);
    mpfr_div_ui(q.get(), q.get(), static_cast<unsigned long>(N + 1), MPFR_RNDU);
    mpfr_set_ui(geo.get(), static_cast<unsigned long>((N + 1) * (N + 1)), MPFR_RNDU);
    for (int i = 0; i < 4; ++i) mpfr_mul(geo.get(), geo.get(), q.get(), MPFR_RNDU);
    // geo = (N+1)^2 q^4: remainder bound if we stopped before j=4
    mpfr_set_ui_2exp(cut.get(), 1, -(p + 8), MPFR_RNDU);

    Ball tail = Ball::zero(ctx);
    Ball zpow = mul(z2, z, ctx);  // z^j at j=3
    Ball a = Ball::exact_int(N + 1, ctx);
    const long j_max = 4 * p + 64;
    bool converged = false;
    for (long j = 3; j <= j_max; ++j) {
        Ball term = mul(zpow, Ball::exact(Rat(j % 2 == 1 ? 1 : -1, j), ctx), ctx);
        term = mul(term, hurwitz_zeta(Rat(j - 1), a, ctx), ctx);
        tail = add(tail, term, ctx);
        // remainder if we stop after this j
        mpfr_sub_ui(tmp.get(), q.get(), 1, MPFR_RNDU);
        mpfr_neg(tmp.get(), tmp.get(), MPFR_RNDD);  // 1-q rounded down
        mpfr_div(tmp.get(), geo.get(), tmp.get(), MPFR_RNDU);
        if (mpfr_cmp(tmp.get(), cut.get()) < 0) {
            tail.inflate(tmp);
            converged = true;
            break;
        }
        mpfr_mul(geo.get(), geo.get(), q.get(), MPFR_RNDU);
        zpow = mul(zpow, z, ctx);
    }
    if (!converged) throw ToleranceNotMet("Barnes G tail did not converge");

    return add(add(head, series, ctx), tail, ctx);
}

}  // namespace detail

// ln G(x) over the positive reals. The functional equation G(x) =
// Gamma(x-1) G(x-1) moves the argument into (1, 2]; the Weierstrass product
// does the rest.
inline Ball barnes_lng(const Ball& x, const PrecCtx& caller) {
    if (!x.strictly_positive())
        throw DomainError("barnes_lng requires a strictly positive interval");
    PrecCtx ctx = caller.with_guard(16);

    Ball cur = round_to(x, ctx);
    Ball corr = Ball::zero(ctx);  // ln G(x) = corr + ln G(cur)
    if (cur.mid_approx() <= 1.0) {
        // one step up: ln G(x) = ln G(x+1) - ln Gamma(x)
        corr = neg(lngamma(cur, ctx));
        cur = add(cur, Ball::exact_int(1, ctx), ctx);
    }
    while (cur.mid_approx() > 2.0) {
        Ball down = sub(cur, Ball::exact_int(1, ctx), ctx);
        corr = add(corr, lngamma(down, ctx), ctx);
        cur = down;
    }

    Ball z = sub(cur, Ball::exact_int(1, ctx), ctx);
    Ball g = (mpfr_zero_p(z.mid().get()) && z.is_exact())
                 ? Ball::zero(ctx)  // G(1) = 1
                 : detail::barnes_lng_window(z, ctx);
    return round_to(add(corr, g, ctx), caller);
}

// Log-domain residual of the duplication formula
//   G(2z) = e^{-1/4} A^3 2^{2z^2-3z+11/12} pi^{1/2-z} G(z) G(z+1/2)^2 G(z+1).
// Contains zero iff barnes_lng and the Glaisher constant are consistent.
inline Ball check_g_duplication(const Rat& z, const PrecCtx& caller) {
    if (!(z > Rat(0))) throw DomainError("duplication check needs z > 0");
    PrecCtx ctx = caller.with_guard(16);
    Ball lhs = barnes_lng(Ball::exact(z * Rat(2), ctx), ctx);

    Rat two_exp = Rat(2) * z * z - Rat(3) * z + Rat(11, 12);
    Rat pi_exp = Rat(1, 2) - z;
    Ball rhs = Ball::exact(Rat(-1, 4), ctx);
    rhs = add(rhs, mul(Ball::exact_int(3, ctx), ln_glaisher(ctx), ctx), ctx);
    rhs = add(rhs, mul(Ball::exact(two_exp, ctx), const_ln2(ctx), ctx), ctx);
    rhs = add(rhs, mul(Ball::exact(pi_exp, ctx), ln(const_pi(ctx), ctx), ctx), ctx);
    rhs = add(rhs, barnes_lng(Ball::exact(z, ctx), ctx), ctx);
    rhs = add(rhs, mul_2exp(barnes_lng(Ball::exact(z + Rat(1, 2), ctx), ctx), 1), ctx);
    rhs = add(rhs, barnes_lng(Ball::exact(z + Rat(1), ctx), ctx), ctx);

    return round_to(sub(lhs, rhs, ctx), caller);
}

}  // namespace wallis
