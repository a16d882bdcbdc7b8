#include "kc/numeric.hpp"

#include "kc/error.hpp"

namespace kc {

BigInt pow2(std::uint64_t k) {
    BigInt r;
    mpz_setbit(r.get_mpz_t(), static_cast<mp_bitcnt_t>(k));
    return r;
}

BigInt pow_int(const BigInt& base, std::uint64_t exp) {
    if (exp == 0) return BigInt(1);
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(exp));
    return r;
}

std::size_t bit_length(const BigInt& v) {
    if (v == 0) return 0;
    return mpz_sizeinbase(v.get_mpz_t(), 2);
}

std::uint64_t floor_log2(const BigInt& n) {
    if (n < 1) throw Error("floor_log2: argument must be >= 1");
    return static_cast<std::uint64_t>(bit_length(n) - 1);
}

BigInt quasipoly_bound_floor(std::uint64_t n) {
    if (n == 0) throw Error("quasipoly_bound_floor: argument must be >= 1");
    // s = 12 dyadic bits: a = floor(2^12 * log2 n) = bit_length(n^4096) - 1.
    constexpr std::uint64_t kShift = 12;
    const BigInt p = pow_int(BigInt(static_cast<unsigned long>(n)), 1ull << kShift);
    const std::uint64_t a = static_cast<std::uint64_t>(bit_length(p) - 1);
    const std::uint64_t e = (a * a) >> (2 * kShift);
    return BigInt(static_cast<unsigned long>(n)) * pow2(e);
}

BigRat rat_from_decimal(std::string_view text) {
    if (text.empty()) throw Error("empty number");
    std::string digits;
    std::size_t frac_digits = 0;
    bool seen_dot = false;
    bool seen_digit = false;
    for (char c : text) {
        if (c == '.') {
            if (seen_dot) throw Error("malformed number '" + std::string(text) + "'");
            seen_dot = true;
        } else if (c >= '0' && c <= '9') {
            digits.push_back(c);
            seen_digit = true;
            if (seen_dot) ++frac_digits;
        } else {
            throw Error("malformed number '" + std::string(text) + "'");
        }
    }
    if (!seen_digit) throw Error("malformed number '" + std::string(text) + "'");
    BigInt num(digits.empty() ? "0" : digits, 10);
    BigInt den = pow_int(BigInt(10), frac_digits);
    BigRat q(num, den);
    q.canonicalize();
    return q;
}

BigRat rat_from_string(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return rat_from_decimal(text);
    std::string num(text.substr(0, slash));
    std::string den(text.substr(slash + 1));
    if (num.empty() || den.empty() ||
        num.find_first_not_of("0123456789") != std::string::npos ||
        den.find_first_not_of("0123456789") != std::string::npos)
        throw Error("malformed number '" + std::string(text) + "'");
    BigInt n(num, 10), d(den, 10);
    if (d == 0) throw Error("zero denominator in '" + std::string(text) + "'");
    BigRat q(n, d);
    q.canonicalize();
    return q;
}

double rat_to_double(const BigRat& q) {
    return q.get_d();
}

std::string rat_to_string(const BigRat& q) {
    return q.get_str();
}

BigInt binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return BigInt(0);
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

} // namespace kc
