#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace smallscat {

using cdouble = std::complex<double>;

/// Cartesian point / direction in R^3.
struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(double s, const Vec3& a) { return {s * a.x, s * a.y, s * a.z}; }
inline Vec3 operator*(const Vec3& a, double s) { return s * a; }
inline Vec3 operator/(const Vec3& a, double s) { return {a.x / s, a.y / s, a.z / s}; }
inline bool operator==(const Vec3& a, const Vec3& b) { return a.x == b.x && a.y == b.y && a.z == b.z; }

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm2(const Vec3& a) { return dot(a, a); }
inline double norm(const Vec3& a) { return std::sqrt(norm2(a)); }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

/// Axis-aligned box, lo < hi componentwise.
struct Box3 {
    Vec3 lo;
    Vec3 hi;

    Vec3 extent() const { return hi - lo; }
    double volume() const {
        const Vec3 e = extent();
        return e.x * e.y * e.z;
    }
    double min_side() const {
        const Vec3 e = extent();
        return std::fmin(e.x, std::fmin(e.y, e.z));
    }
    double max_side() const {
        const Vec3 e = extent();
        return std::fmax(e.x, std::fmax(e.y, e.z));
    }
    bool contains(const Vec3& p) const {
        return p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y && p.z >= lo.z &&
               p.z <= hi.z;
    }
    /// Distance from p to the box (0 inside).
    double distance(const Vec3& p) const {
        const double dx = std::fmax(std::fmax(lo.x - p.x, p.x - hi.x), 0.0);
        const double dy = std::fmax(std::fmax(lo.y - p.y, p.y - hi.y), 0.0);
        const double dz = std::fmax(std::fmax(lo.z - p.z, p.z - hi.z), 0.0);
        return std::sqrt(dx * dx + dy * dy + dz * dz);
    }
    /// Distance from an interior point to the boundary (0 outside).
    double interior_clearance(const Vec3& p) const {
        if (!contains(p)) return 0.0;
        double c = p.x - lo.x;
        c = std::fmin(c, hi.x - p.x);
        c = std::fmin(c, p.y - lo.y);
        c = std::fmin(c, hi.y - p.y);
        c = std::fmin(c, p.z - lo.z);
        c = std::fmin(c, hi.z - p.z);
        return c;
    }
    Box3 dilated(double margin) const {
        const Vec3 m{margin, margin, margin};
        return {lo - m, hi + m};
    }
};

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double four_pi = 4.0 * pi;

}  // namespace smallscat
