#pragma once

#include <array>
#include <cmath>

#include "wulff/errors.hpp"

namespace wulff {

// Fixed-capacity euclidean vector for n in {2,3}. Unused components stay zero,
// so dot/cross over the full array are safe regardless of dim.
class Vec {
public:
    Vec() = default;
    Vec(double x, double y) : c_{x, y, 0.0}, dim_(2) {}
    Vec(double x, double y, double z) : c_{x, y, z}, dim_(3) {}

    static Vec zero(int dim) { return dim == 2 ? Vec(0, 0) : Vec(0, 0, 0); }

    int dim() const { return dim_; }
    double operator[](int i) const { return c_[static_cast<size_t>(i)]; }
    double& operator[](int i) { return c_[static_cast<size_t>(i)]; }

    Vec& operator+=(const Vec& o) {
        for (size_t i = 0; i < 3; ++i) c_[i] += o.c_[i];
        return *this;
    }
    Vec& operator-=(const Vec& o) {
        for (size_t i = 0; i < 3; ++i) c_[i] -= o.c_[i];
        return *this;
    }
    Vec& operator*=(double s) {
        for (double& x : c_) x *= s;
        return *this;
    }

private:
    std::array<double, 3> c_{0.0, 0.0, 0.0};
    int dim_ = 3;
};

inline Vec operator+(Vec a, const Vec& b) { return a += b; }
inline Vec operator-(Vec a, const Vec& b) { return a -= b; }
inline Vec operator*(double s, Vec v) { return v *= s; }
inline Vec operator*(Vec v, double s) { return v *= s; }

inline double dot(const Vec& a, const Vec& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline double norm2(const Vec& v) { return dot(v, v); }
inline double norm(const Vec& v) { return std::sqrt(norm2(v)); }

// z-component of the 2-D cross product
inline double cross2(const Vec& a, const Vec& b) { return a[0] * b[1] - a[1] * b[0]; }

inline Vec cross3(const Vec& a, const Vec& b) {
    return Vec(a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
               a[0] * b[1] - a[1] * b[0]);
}

// Unit vector on S^{n-1}; the constructor normalizes.
class Direction {
public:
    explicit Direction(const Vec& v) : v_(v) {
        const double len = norm(v);
        if (!(len > 0.0) || !std::isfinite(len))
            throw Error("Direction: cannot normalize zero or non-finite vector");
        v_ *= 1.0 / len;
    }
    Direction(double x, double y) : Direction(Vec(x, y)) {}
    Direction(double x, double y, double z) : Direction(Vec(x, y, z)) {}

    static Direction from_angle(double theta) {
        return Direction(Vec(std::cos(theta), std::sin(theta)));
    }

    const Vec& vec() const { return v_; }
    double operator[](int i) const { return v_[i]; }
    int dim() const { return v_.dim(); }

    // polar angle in [0, 2*pi), 2-D only
    double angle() const {
        double a = std::atan2(v_[1], v_[0]);
        if (a < 0) a += 2.0 * M_PI;
        return a;
    }

private:
    Vec v_;
};

inline double dot(const Direction& a, const Direction& b) { return dot(a.vec(), b.vec()); }
inline double dot(const Direction& a, const Vec& b) { return dot(a.vec(), b); }
inline double dot(const Vec& a, const Direction& b) { return dot(a, b.vec()); }

// Compensated (Kahan) accumulator; keeps reductions bit-stable and order-robust.
class KahanSum {
public:
    void add(double x) {
        const double y = x - carry_;
        const double t = sum_ + y;
        carry_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

}  // namespace wulff
