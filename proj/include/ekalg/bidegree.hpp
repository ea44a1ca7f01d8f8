#pragma once

#include <cstdint>
#include <string>
#include <tuple>

#include "ekalg/errors.hpp"

namespace ekalg {

// Pair (t, w): total/internal degree t (any integer) and weight w >= 0.
// In chart output w doubles as the filtration coordinate f.
struct Bidegree {
    int64_t t = 0;
    int64_t w = 0;

    Bidegree() = default;
    Bidegree(int64_t t_, int64_t w_) : t(t_), w(w_)
    {
        if (w < 0)
            throw InvalidArgument("bidegree weight must be non-negative");
    }

    Bidegree operator+(const Bidegree& rhs) const { return {t + rhs.t, w + rhs.w}; }
    Bidegree& operator+=(const Bidegree& rhs)
    {
        t += rhs.t;
        w += rhs.w;
        return *this;
    }
    Bidegree operator*(int64_t k) const { return {t * k, w * k}; }

    bool operator==(const Bidegree& rhs) const { return t == rhs.t && w == rhs.w; }
    bool operator!=(const Bidegree& rhs) const { return !(*this == rhs); }
    bool operator<(const Bidegree& rhs) const
    {
        return std::tie(t, w) < std::tie(rhs.t, rhs.w);
    }

    // Componentwise domination, used for window membership.
    bool dominated_by(const Bidegree& window) const { return t <= window.t && w <= window.w; }

    std::string str() const { return "(" + std::to_string(t) + "," + std::to_string(w) + ")"; }
};

}  // namespace ekalg
