#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace zerotrace {

/// Cartesian point or direction in R^3.
struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend constexpr Vec3 operator+(const Vec3& a, const Vec3& b) {
        return {a.x + b.x, a.y + b.y, a.z + b.z};
    }
    friend constexpr Vec3 operator-(const Vec3& a, const Vec3& b) {
        return {a.x - b.x, a.y - b.y, a.z - b.z};
    }
    friend constexpr Vec3 operator*(double s, const Vec3& v) {
        return {s * v.x, s * v.y, s * v.z};
    }
    friend constexpr Vec3 operator*(const Vec3& v, double s) { return s * v; }
    friend constexpr Vec3 operator/(const Vec3& v, double s) {
        return {v.x / s, v.y / s, v.z / s};
    }
    /// Componentwise negation; exact in IEEE arithmetic.
    friend constexpr Vec3 operator-(const Vec3& v) { return {-v.x, -v.y, -v.z}; }
    friend constexpr bool operator==(const Vec3& a, const Vec3& b) {
        return a.x == b.x && a.y == b.y && a.z == b.z;
    }
};

constexpr double dot(const Vec3& a, const Vec3& b) {
    return a.x * b.x + a.y * b.y + a.z * b.z;
}

constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

inline Vec3 normalized(const Vec3& v) { return v / norm(v); }

constexpr Vec3 lerp(const Vec3& a, const Vec3& b, double t) { return a + t * (b - a); }

constexpr Vec3 chord_midpoint(const Vec3& a, const Vec3& b) { return 0.5 * (a + b); }

/// Angle in [0, pi] between two nonzero vectors.
inline double angle_between(const Vec3& a, const Vec3& b) {
    return std::atan2(norm(cross(a, b)), dot(a, b));
}

/// Row-major 3x3 matrix, used for mesh rotations.
struct Mat3 {
    std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};

    static Mat3 identity() { return {}; }

    Vec3 operator*(const Vec3& v) const {
        return {m[0] * v.x + m[1] * v.y + m[2] * v.z,
                m[3] * v.x + m[4] * v.y + m[5] * v.z,
                m[6] * v.x + m[7] * v.y + m[8] * v.z};
    }

    Mat3 transposed() const {
        return {{m[0], m[3], m[6], m[1], m[4], m[7], m[2], m[5], m[8]}};
    }

    double determinant() const {
        return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
               m[2] * (m[3] * m[7] - m[4] * m[6]);
    }

    friend Mat3 operator*(const Mat3& a, const Mat3& b) {
        Mat3 r{};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double s = 0.0;
                for (int k = 0; k < 3; ++k) s += a.m[3 * i + k] * b.m[3 * k + j];
                r.m[3 * i + j] = s;
            }
        return r;
    }
};

/// Frobenius norm of R^T R - I.
inline double orthogonality_defect(const Mat3& r) {
    Mat3 g = r.transposed() * r;
    double s = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double d = g.m[3 * i + j] - (i == j ? 1.0 : 0.0);
            s += d * d;
        }
    return std::sqrt(s);
}

inline Mat3 rotation_about_z(double angle) {
    double c = std::cos(angle), s = std::sin(angle);
    return {{c, -s, 0, s, c, 0, 0, 0, 1}};
}

inline Mat3 rotation_from_quaternion(double w, double x, double y, double z) {
    return {{1 - 2 * (y * y + z * z), 2 * (x * y - z * w), 2 * (x * z + y * w),
             2 * (x * y + z * w), 1 - 2 * (x * x + z * z), 2 * (y * z - x * w),
             2 * (x * z - y * w), 2 * (y * z + x * w), 1 - 2 * (x * x + y * y)}};
}

inline double uniform01(std::mt19937_64& g) {
    return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

/// Uniformly distributed rotation (Shoemake's quaternion construction).
inline Mat3 random_rotation(std::mt19937_64& g) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double u1 = uniform01(g), u2 = uniform01(g), u3 = uniform01(g);
    double a = std::sqrt(1.0 - u1), b = std::sqrt(u1);
    return rotation_from_quaternion(b * std::cos(two_pi * u3), a * std::sin(two_pi * u2),
                                    a * std::cos(two_pi * u2), b * std::sin(two_pi * u3));
}

}  // namespace zerotrace
