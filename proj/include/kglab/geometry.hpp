#pragma once

#include <cmath>

namespace kglab {

/// Plane vector used for both frequency (xi, eta) and position arguments.
struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline Vec2 operator*(Vec2 a, double s) { return s * a; }
inline Vec2 operator/(Vec2 a, double s) { return {a.x / s, a.y / s}; }

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm_sq(Vec2 a) { return dot(a, a); }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

/// Counterclockwise quarter turn: (x, y) -> (-y, x).
inline Vec2 perp(Vec2 a) { return {-a.y, a.x}; }

inline Vec2 rotate(Vec2 a, double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    return {c * a.x - s * a.y, s * a.x + c * a.y};
}

/// Symmetric 2x2 matrix (Hessians of radial symbols and phases).
struct SymMat2 {
    double xx = 0.0;
    double xy = 0.0;
    double yy = 0.0;
};

inline SymMat2 operator+(SymMat2 a, SymMat2 b) { return {a.xx + b.xx, a.xy + b.xy, a.yy + b.yy}; }
inline SymMat2 operator-(SymMat2 a, SymMat2 b) { return {a.xx - b.xx, a.xy - b.xy, a.yy - b.yy}; }
inline SymMat2 operator-(SymMat2 a) { return {-a.xx, -a.xy, -a.yy}; }
inline SymMat2 operator*(double s, SymMat2 a) { return {s * a.xx, s * a.xy, s * a.yy}; }

inline Vec2 apply(SymMat2 m, Vec2 v) { return {m.xx * v.x + m.xy * v.y, m.xy * v.x + m.yy * v.y}; }
inline double quad_form(SymMat2 m, Vec2 u, Vec2 v) { return dot(u, apply(m, v)); }
inline double det(SymMat2 m) { return m.xx * m.yy - m.xy * m.xy; }
inline double trace(SymMat2 m) { return m.xx + m.yy; }

/// Eigenvalues of a symmetric 2x2 matrix, ascending.
inline void eigenvalues(SymMat2 m, double& lo, double& hi) {
    const double half_tr = 0.5 * (m.xx + m.yy);
    const double disc = std::sqrt(0.25 * (m.xx - m.yy) * (m.xx - m.yy) + m.xy * m.xy);
    lo = half_tr - disc;
    hi = half_tr + disc;
}

}  // namespace kglab
