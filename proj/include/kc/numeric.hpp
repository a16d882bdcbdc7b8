#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace kc {

// Exact integer / rational arithmetic. GMP does the heavy lifting; the
// helpers below cover the handful of operations the library needs by name.
using BigInt = mpz_class;
using BigRat = mpq_class;

// 2^k
BigInt pow2(std::uint64_t k);

// base^exp with 0^0 = 1
BigInt pow_int(const BigInt& base, std::uint64_t exp);

// Number of bits in the binary representation; 0 for 0.
std::size_t bit_length(const BigInt& v);

// floor(log2(n)) for n >= 1.
std::uint64_t floor_log2(const BigInt& n);

// A certified integer lower bound for n * 2^(log2(n)^2), n >= 1.
//
// log2(n) is irrational unless n is a power of two, so the bound cannot be
// represented exactly. Instead we compute a = floor(2^s * log2 n) exactly
// (as bit_length(n^(2^s)) - 1) and return n * 2^floor(a^2 / 2^(2s)), which
// is <= n * 2^(log2(n)^2) and loses less than two doublings. Checking a
// value against this under-approximation therefore certifies the real
// inequality with no floating-point involved.
BigInt quasipoly_bound_floor(std::uint64_t n);

// Parse a nonnegative decimal like "0.25", "1", ".5" into an exact rational.
BigRat rat_from_decimal(std::string_view text);

// Accepts the decimal forms above plus exact fractions like "3/10".
BigRat rat_from_string(std::string_view text);

double rat_to_double(const BigRat& q);

std::string rat_to_string(const BigRat& q);

// n choose k as a BigInt.
BigInt binomial(std::uint64_t n, std::uint64_t k);

} // namespace kc
