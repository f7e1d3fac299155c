#pragma once

#include <mutex>
#include <vector>

#include "wallis/rat.hpp"

namespace wallis {

// Exact Bernoulli numbers, B1 = -1/2 convention. Even entries come from the
// integer tangent-number triangle:
//   tan x = sum T_n x^(2n-1)/(2n-1)!,  B_{2n} = (-1)^(n-1) * 2n * T_n / (4^n (4^n - 1)).
// Memoized and internally synchronized; the table extends on demand.
class BernoulliTable {
  public:
    static Rat get(long m) {
        if (m < 0) throw DomainError("Bernoulli index must be >= 0");
        if (m == 0) return Rat(1);
        if (m == 1) return Rat(-1, 2);
        if (m % 2 == 1) return Rat(0);
        auto& self = instance_();
        std::lock_guard<std::mutex> lock(self.mu_);
        long n = m / 2;
        if (n >= static_cast<long>(self.even_.size())) self.extend_(n);
        return self.even_[n];
    }

  private:
    static BernoulliTable& instance_() {
        static BernoulliTable t;
        return t;
    }

    void extend_(long n_needed) {
        long n = std::max<long>(n_needed + 8, static_cast<long>(even_.size()) * 2);
        std::vector<BigInt> t(n + 1);
        t[1] = 1;
        for (long k = 2; k <= n; ++k) t[k] = (k - 1) * t[k - 1];
        for (long k = 2; k <= n; ++k)
            for (long j = k; j <= n; ++j) t[j] = (j - k) * t[j - 1] + (j - k + 2) * t[j];
        even_.assign(n + 1, Rat(0));
        even_[0] = Rat(1);
        BigInt four_n = 1;
        for (long k = 1; k <= n; ++k) {
            four_n *= 4;
            BigInt num = 2 * k * t[k];
            if (k % 2 == 0) num = -num;
            even_[k] = Rat(num, four_n * (four_n - 1));
        }
    }

    std::mutex mu_;
    std::vector<Rat> even_;  // even_[n] = B_{2n}
};

}  // namespace wallis
