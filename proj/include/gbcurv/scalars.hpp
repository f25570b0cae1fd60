#ifndef GBCURV_SCALARS_HPP
#define GBCURV_SCALARS_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>

namespace gbcurv {

/// Exact scalar for the rational certification mode.
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(double x) { return x; }
inline double to_double(const Rational& x) { return x.template convert_to<double>(); }

inline double abs_value(double x) { return std::abs(x); }
inline Rational abs_value(const Rational& x) { return x < 0 ? Rational(-x) : x; }

template <class T>
struct scalar_name;
template <>
struct scalar_name<double> {
    static constexpr const char* value = "float";
};
template <>
struct scalar_name<Rational> {
    static constexpr const char* value = "exact";
};

/// |a-b| / max(1, |a|, |b|); the deviation metric used by every identity
/// suite. Exact scalars produce 0 or an honest nonzero.
template <class T>
double deviation(const T& a, const T& b) {
    const double da = std::abs(to_double(a));
    const double db = std::abs(to_double(b));
    const double diff = std::abs(to_double(T(a - b)));
    return diff / std::max({1.0, da, db});
}

/// Deterministic, platform-independent uniform draws on top of the
/// standardized mt19937_64 sequence.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) : eng_(seed) {}

    /// uniform in [-1, 1]
    double uniform_signed() {
        const std::uint64_t bits = eng_() >> 11; // 53 random bits
        const double u = static_cast<double>(bits) * 0x1p-53; // [0,1)
        return 2.0 * u - 1.0;
    }

    /// uniform integer in [lo, hi]
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo + 1);
        return lo + static_cast<std::int64_t>(eng_() % span);
    }

    /// small rational with numerator in [-9,9], denominator in [1,9]
    Rational small_rational() {
        return Rational(uniform_int(-9, 9), uniform_int(1, 9));
    }

    template <class T>
    T draw();

private:
    std::mt19937_64 eng_;
};

template <>
inline double RandomSource::draw<double>() {
    return uniform_signed();
}
template <>
inline Rational RandomSource::draw<Rational>() {
    return small_rational();
}

/// Stable seed derivation so every (suite, case, trial) stream is independent
/// of evaluation order.
inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t a, std::uint64_t b = 0,
                                 std::uint64_t c = 0) {
    std::uint64_t x = root ^ (a * 0x9e3779b97f4a7c15ULL) ^ (b * 0xbf58476d1ce4e5b9ULL) ^
                      (c * 0x94d049bb133111ebULL);
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

} // namespace gbcurv

#endif
