#pragma once

namespace stovex {

struct AiryValues {
  double ai = 0.0;
  double aip = 0.0;  // Ai'
};

inline constexpr double kAiryRange = 15.0;

// Ai and Ai' on [-15, 15]: Maclaurin series on [-8, 6], asymptotic
// expansions outside.
AiryValues airy(double x);

// (Ai(x)Ai'(y) - Ai(y)Ai'(x))/(x - y), with the limit Ai'(x)^2 - x Ai(x)^2
// on the diagonal.
double airy_kernel(double x, double y);
double airy_kernel(double x, const AiryValues& ax, double y, const AiryValues& ay);

}  // namespace stovex
