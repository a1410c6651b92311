#pragma once

// Arithmetic in the prime field F_p.
//
// The modulus is process-wide configuration: set it once at startup (the
// CLI honours --prime and PHILAB_PRIME) before any Matrix is built. All
// values are stored reduced, 0 <= x < p, in 32 bits; products fit 64 bits.

#include <cstdint>
#include <stdexcept>
#include <string>

namespace philab {

using Scalar = std::uint32_t;

inline constexpr std::uint64_t kDefaultPrime = 2147483647ULL;  // 2^31 - 1

class ConfigurationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

namespace field {

namespace detail {
inline std::uint64_t g_modulus = kDefaultPrime;
inline bool g_mersenne = true;
}  // namespace detail

inline std::uint64_t modulus() { return detail::g_modulus; }
inline bool is_mersenne31() { return detail::g_mersenne; }

bool is_prime(std::uint64_t n);

/// Sets the global modulus. Throws ConfigurationError unless p is a prime
/// with 2 < p < 2^31.
void set_modulus(std::uint64_t p);

/// Reads PHILAB_PRIME if set; returns the modulus in effect afterwards.
std::uint64_t configure_from_env();

inline Scalar reduce64(std::uint64_t x) {
    if (detail::g_mersenne) {
        x = (x & 0x7fffffffULL) + (x >> 31);
        x = (x & 0x7fffffffULL) + (x >> 31);
        return static_cast<Scalar>(x >= 0x7fffffffULL ? x - 0x7fffffffULL : x);
    }
    return static_cast<Scalar>(x % detail::g_modulus);
}

inline Scalar add(Scalar a, Scalar b) {
    std::uint64_t s = std::uint64_t(a) + b;
    return static_cast<Scalar>(s >= detail::g_modulus ? s - detail::g_modulus : s);
}
inline Scalar sub(Scalar a, Scalar b) {
    return a >= b ? a - b : static_cast<Scalar>(detail::g_modulus - b + a);
}
inline Scalar neg(Scalar a) { return a == 0 ? 0 : static_cast<Scalar>(detail::g_modulus - a); }
inline Scalar mul(Scalar a, Scalar b) { return reduce64(std::uint64_t(a) * b); }

Scalar pow(Scalar a, std::uint64_t e);
/// Multiplicative inverse; a must be nonzero.
Scalar inv(Scalar a);

/// Maps a signed integer to its residue.
Scalar from_int(std::int64_t v);
/// Symmetric lift into (-p/2, p/2], used for printing small integers.
std::int64_t to_signed(Scalar a);

}  // namespace field
}  // namespace philab
