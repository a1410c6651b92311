#include "philab/field.hpp"

#include <cstdlib>

namespace philab::field {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d : {2ULL, 3ULL, 5ULL, 7ULL}) {
        if (n % d == 0) return n == d;
    }
    // Deterministic Miller-Rabin for n < 2^64 with these bases.
    auto mulmod = [n](std::uint64_t a, std::uint64_t b) {
        return static_cast<std::uint64_t>((unsigned __int128)a * b % n);
    };
    auto powmod = [&](std::uint64_t a, std::uint64_t e) {
        std::uint64_t r = 1;
        a %= n;
        while (e) {
            if (e & 1) r = mulmod(r, a);
            a = mulmod(a, a);
            e >>= 1;
        }
        return r;
    };
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = powmod(a, d);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

void set_modulus(std::uint64_t p) {
    if (p <= 2 || p >= (1ULL << 31) || !is_prime(p)) {
        throw ConfigurationError("modulus must be an odd prime below 2^31, got " + std::to_string(p));
    }
    detail::g_modulus = p;
    detail::g_mersenne = (p == 0x7fffffffULL);
}

std::uint64_t configure_from_env() {
    if (const char* env = std::getenv("PHILAB_PRIME"); env && *env) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end == env || *end != '\0') {
            throw ConfigurationError(std::string("PHILAB_PRIME is not an integer: ") + env);
        }
        set_modulus(v);
    }
    return modulus();
}

Scalar pow(Scalar a, std::uint64_t e) {
    Scalar r = 1;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

Scalar inv(Scalar a) {
    if (a == 0) throw std::domain_error("inverse of zero in F_p");
    return pow(a, detail::g_modulus - 2);
}

Scalar from_int(std::int64_t v) {
    auto p = static_cast<std::int64_t>(detail::g_modulus);
    v %= p;
    if (v < 0) v += p;
    return static_cast<Scalar>(v);
}

std::int64_t to_signed(Scalar a) {
    auto p = static_cast<std::int64_t>(detail::g_modulus);
    std::int64_t v = a;
    return v > p / 2 ? v - p : v;
}

}  // namespace philab::field
