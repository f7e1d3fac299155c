#pragma once

#include <map>
#include <mutex>
#include <utility>

#include "wallis/ball.hpp"
#include "wallis/hurwitz.hpp"

namespace wallis {

namespace detail {

enum class ConstKind { Pi, E, EulerGamma, Ln2, Catalan, LnGlaisher };

// Per-constant memo of prec_bits -> Ball. Concurrent readers, exclusive fill.
class ConstantCache {
  public:
    template <typename F>
    static Ball get(ConstKind kind, const PrecCtx& ctx, F&& compute) {
        auto& self = instance_();
        std::pair<int, long> key{static_cast<int>(kind), ctx.prec_bits};
        {
            std::lock_guard<std::mutex> lock(self.mu_);
            auto it = self.memo_.find(key);
            if (it != self.memo_.end()) return it->second;
        }
        Ball v = compute();
        std::lock_guard<std::mutex> lock(self.mu_);
        return self.memo_.emplace(key, std::move(v)).first->second;
    }

  private:
    static ConstantCache& instance_() {
        static ConstantCache c;
        return c;
    }
    std::mutex mu_;
    std::map<std::pair<int, long>, Ball> memo_;
};

}  // namespace detail

inline Ball const_pi(const PrecCtx& ctx) {
    return detail::ConstantCache::get(detail::ConstKind::Pi, ctx, [&] {
        return detail::BallBuilder::correctly_rounded(ctx.prec_bits, mpfr_const_pi);
    });
}

inline Ball const_gamma(const PrecCtx& ctx) {
    return detail::ConstantCache::get(detail::ConstKind::EulerGamma, ctx, [&] {
        return detail::BallBuilder::correctly_rounded(ctx.prec_bits, mpfr_const_euler);
    });
}

inline Ball const_ln2(const PrecCtx& ctx) {
    return detail::ConstantCache::get(detail::ConstKind::Ln2, ctx, [&] {
        return detail::BallBuilder::correctly_rounded(ctx.prec_bits, mpfr_const_log2);
    });
}

inline Ball const_catalan(const PrecCtx& ctx) {
    return detail::ConstantCache::get(detail::ConstKind::Catalan, ctx, [&] {
        return detail::BallBuilder::correctly_rounded(ctx.prec_bits, mpfr_const_catalan);
    });
}

inline Ball const_e(const PrecCtx& ctx) {
    return detail::ConstantCache::get(detail::ConstKind::E, ctx, [&] {
        PrecCtx inner = ctx.with_guard(8);
        return round_to(exp(Ball::exact_int(1, inner), inner), ctx);
    });
}

// ln A = (gamma + ln 2pi)/12 - zeta'(2)/(2 pi^2), from
// zeta'(2) = (pi^2/6)(gamma + ln 2pi - 12 ln A).
inline Ball ln_glaisher(const PrecCtx& ctx) {
    return detail::ConstantCache::get(detail::ConstKind::LnGlaisher, ctx, [&] {
        PrecCtx inner = ctx.with_guard(24);
        Ball zp2 = hurwitz_zeta_with_sderiv(Rat(2), Ball::exact_int(1, inner), inner).second;
        Ball pi = const_pi(inner);
        Ball ln2pi = ln(mul_2exp(pi, 1), inner);
        Ball lead = mul(add(const_gamma(inner), ln2pi, inner),
                        Ball::exact(Rat(1, 12), inner), inner);
        Ball corr = div(zp2, mul_2exp(mul(pi, pi, inner), 1), inner);
        Ball lnA = sub(lead, corr, inner);
        if (!lnA.rad_le(ctx.target_abs_tol))
            throw ToleranceNotMet("ln A not certified at this precision");
        return round_to(lnA, ctx);
    });
}

inline Ball const_glaisher(const PrecCtx& ctx) {
    PrecCtx inner = ctx.with_guard(8);
    return round_to(exp(ln_glaisher(inner), inner), ctx);
}

inline Ball zeta_deriv_at_minus1(const PrecCtx& ctx) {
    PrecCtx inner = ctx.with_guard(8);
    return round_to(sub(Ball::exact(Rat(1, 12), inner), ln_glaisher(inner), inner), ctx);
}

// sin(pi r) as a ball.
inline Ball sin_pi(const Rat& r, const PrecCtx& ctx) {
    PrecCtx inner = ctx.with_guard(8);
    Ball t = mul(const_pi(inner), Ball::exact(r, inner), inner);
    return round_to(sin_ball(t, inner), ctx);
}

}  // namespace wallis
