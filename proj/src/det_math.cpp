#include "rpe/det_math.hpp"

#include <cmath>

namespace rpe {
namespace {

// Taylor kernels on |x| <= pi/4.  Fixed term counts; truncation error is
// below 1e-18, well under double rounding noise.
double sin_kernel(double x) noexcept {
    const double x2 = x * x;
    // x - x^3/3! + x^5/5! - ... - x^19/19!
    double p = -1.0 / 121645100408832000.0;          // -1/19!
    p = p * x2 + 1.0 / 355687428096000.0;            //  1/17!
    p = p * x2 - 1.0 / 1307674368000.0;              // -1/15!
    p = p * x2 + 1.0 / 6227020800.0;                 //  1/13!
    p = p * x2 - 1.0 / 39916800.0;                   // -1/11!
    p = p * x2 + 1.0 / 362880.0;                     //  1/9!
    p = p * x2 - 1.0 / 5040.0;                       // -1/7!
    p = p * x2 + 1.0 / 120.0;                        //  1/5!
    p = p * x2 - 1.0 / 6.0;                          // -1/3!
    return x + x * x2 * p;
}

double cos_kernel(double x) noexcept {
    const double x2 = x * x;
    // 1 - x^2/2! + x^4/4! - ... + x^18/18!
    double p = 1.0 / 6402373705728000.0;             //  1/18!
    p = p * x2 - 1.0 / 20922789888000.0;             // -1/16!
    p = p * x2 + 1.0 / 87178291200.0;                //  1/14!
    p = p * x2 - 1.0 / 479001600.0;                  // -1/12!
    p = p * x2 + 1.0 / 3628800.0;                    //  1/10!
    p = p * x2 - 1.0 / 40320.0;                      // -1/8!
    p = p * x2 + 1.0 / 720.0;                        //  1/6!
    p = p * x2 - 1.0 / 24.0;                         // -1/4!
    p = p * x2 + 1.0 / 2.0;                          //  1/2!
    return 1.0 - x2 * p;
}

}  // namespace

void sincos_turns(double turns, double& s, double& c) noexcept {
    // Reduce to [0,1) turns; floor() is exact.
    double t = turns - std::floor(turns);
    // Quarter-turn index and residual in [-1/8, 1/8] turns.
    const double q4 = t * 4.0;
    int quad = static_cast<int>(q4 + 0.5);  // q4 in [0,4) so this is 0..4
    const double r = (q4 - static_cast<double>(quad)) * (0.25 * kTwoPi);
    quad &= 3;
    const double sk = sin_kernel(r);
    const double ck = cos_kernel(r);
    switch (quad) {
        case 0: s = sk;  c = ck;  break;
        case 1: s = ck;  c = -sk; break;
        case 2: s = -sk; c = -ck; break;
        default: s = -ck; c = sk; break;
    }
}

double sin_turns(double turns) noexcept {
    double s, c;
    sincos_turns(turns, s, c);
    return s;
}

double cos_turns(double turns) noexcept {
    double s, c;
    sincos_turns(turns, s, c);
    return c;
}

double det_asin(double x) noexcept {
    const double ax = x < 0.0 ? -x : x;
    if (ax > 0.5) {
        // asin(x) = pi/2 - 2 asin(sqrt((1-x)/2)); argument lands in [0, 0.5].
        const double inner = det_asin(std::sqrt((1.0 - ax) * 0.5));
        const double v = 0.5 * kPi - 2.0 * inner;
        return x < 0.0 ? -v : v;
    }
    // Maclaurin series; coefficient recurrence in doubles, 27 terms covers
    // |x| <= 0.5 to below 1e-18.
    const double x2 = x * x;
    double term = x;    // c_n * x^(2n+1)
    double sum = x;
    for (int n = 0; n < 27; ++n) {
        const double k = 2.0 * n + 1.0;
        term *= x2 * (k * k) / ((k + 1.0) * (k + 2.0));
        sum += term;
    }
    return sum;
}

double det_log(double x) noexcept {
    // x = m * 2^e with m in [0.5,1); shift m into [1/sqrt2, sqrt2).
    int e = 0;
    double m = std::frexp(x, &e);
    if (m < 0.70710678118654752440) {
        m *= 2.0;
        e -= 1;
    }
    // log m = 2 atanh((m-1)/(m+1)), |z| <= 0.1716.
    const double z = (m - 1.0) / (m + 1.0);
    const double z2 = z * z;
    double sum = 0.0;
    // Descending Horner over odd powers up to z^25.
    for (int k = 12; k >= 0; --k) {
        sum = sum * z2 + 1.0 / (2.0 * k + 1.0);
    }
    constexpr double kLn2 = 0.693147180559945309417232121458176568;
    return 2.0 * z * sum + static_cast<double>(e) * kLn2;
}

double det_exp(double x) noexcept {
    // x = k ln2 + r, |r| <= ln2/2; 2^k scaling via ldexp is exact.
    constexpr double kLn2 = 0.693147180559945309417232121458176568;
    const double kd = std::floor(x / kLn2 + 0.5);
    const int k = static_cast<int>(kd);
    const double r = x - kd * kLn2;
    // Taylor to r^17/17!; |r| <= 0.347 keeps truncation below 1e-19.
    double sum = 1.0;
    double term = 1.0;
    for (int i = 1; i <= 17; ++i) {
        term *= r / static_cast<double>(i);
        sum += term;
    }
    return std::ldexp(sum, k);
}

GaussPair gaussian_pair(SplitMix64& rng) noexcept {
    const double u1 = rng.next_open();
    const double u2 = rng.next_double();
    const double r = std::sqrt(-2.0 * det_log(u1));
    double s, c;
    sincos_turns(u2, s, c);
    return GaussPair{r * c, r * s};
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) noexcept {
    // One SplitMix64 scramble of (seed, index); distinct indices give
    // statistically independent streams.
    SplitMix64 g(seed ^ (0x632be59bd9b4e019ULL * (index + 1)));
    return g.next();
}

}  // namespace rpe
