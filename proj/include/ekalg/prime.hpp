#pragma once

#include <cstdint>
#include <string>

#include "ekalg/errors.hpp"

namespace ekalg {

// A prime p together with arithmetic in the field F_p.
// Residues are always kept in [0, p); all arithmetic is exact.
class Prime {
  public:
    explicit Prime(uint32_t p) : p_(p)
    {
        if (!is_prime(p))
            throw NotPrime(std::to_string(p) + " is not prime");
    }

    uint32_t value() const { return p_; }
    bool is_two() const { return p_ == 2; }
    bool is_odd() const { return p_ != 2; }

    static bool is_prime(uint32_t n)
    {
        if (n < 2)
            return false;
        for (uint32_t d = 2; d * d <= n; ++d)
            if (n % d == 0)
                return false;
        return true;
    }

    uint32_t reduce(int64_t a) const
    {
        int64_t r = a % static_cast<int64_t>(p_);
        if (r < 0)
            r += p_;
        return static_cast<uint32_t>(r);
    }

    uint32_t add(uint32_t a, uint32_t b) const
    {
        uint32_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }

    uint32_t sub(uint32_t a, uint32_t b) const { return a >= b ? a - b : a + p_ - b; }

    uint32_t neg(uint32_t a) const { return a == 0 ? 0 : p_ - a; }

    uint32_t mul(uint32_t a, uint32_t b) const
    {
        return static_cast<uint32_t>((static_cast<uint64_t>(a) * b) % p_);
    }

    uint32_t pow(uint32_t a, uint64_t e) const
    {
        uint32_t r = 1 % p_;
        uint32_t base = a % p_;
        while (e) {
            if (e & 1)
                r = mul(r, base);
            base = mul(base, base);
            e >>= 1;
        }
        return r;
    }

    // Multiplicative inverse; a must be nonzero mod p.
    uint32_t inv(uint32_t a) const
    {
        a %= p_;
        if (a == 0)
            throw InvalidArgument("division by zero in F_" + std::to_string(p_));
        return pow(a, p_ - 2);
    }

    bool operator==(const Prime& rhs) const { return p_ == rhs.p_; }
    bool operator!=(const Prime& rhs) const { return p_ != rhs.p_; }

  private:
    uint32_t p_;
};

}  // namespace ekalg
