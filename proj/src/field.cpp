#include "seclin/field.hpp"

namespace seclin {

namespace {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1) r = mul_mod(r, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return r;
}

// Extended Euclid on the residue; n is prime so every nonzero a has an inverse.
std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = static_cast<std::int64_t>(p), new_r = static_cast<std::int64_t>(a);
    while (new_r != 0) {
        std::int64_t q = r / new_r;
        std::int64_t tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (t < 0) t += static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(t);
}

} // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // This base set decides primality for all 64-bit integers.
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::uint64_t FieldElement::residue_value() const {
    if (!is_residue()) throw StructuralError("field mismatch: expected a prime-field element");
    return std::get<std::uint64_t>(v_);
}

const mpq_class& FieldElement::rational_value() const {
    if (is_residue()) throw StructuralError("field mismatch: expected a real-field element");
    return std::get<mpq_class>(v_);
}

FieldSpec FieldSpec::gf(std::uint64_t modulus) {
    if (!is_prime_u64(modulus)) {
        throw StructuralError("field modulus " + std::to_string(modulus) + " is not prime");
    }
    return FieldSpec(FieldKind::prime_field, modulus);
}

FieldSpec FieldSpec::real() { return FieldSpec(FieldKind::real, 0); }

FieldSpec FieldSpec::parse(const std::string& name) {
    if (name == "real") return real();
    if (name.rfind("gf:", 0) == 0) {
        const std::string digits = name.substr(3);
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
            throw StructuralError("invalid field name \"" + name + "\"");
        }
        return gf(std::stoull(digits));
    }
    throw StructuralError("invalid field name \"" + name + "\" (expected \"gf:<p>\" or \"real\")");
}

std::uint64_t FieldSpec::modulus() const {
    if (!is_prime_field()) throw StructuralError("the real field has no modulus");
    return p_;
}

std::string FieldSpec::name() const {
    return is_prime_field() ? "gf:" + std::to_string(p_) : "real";
}

std::uint64_t FieldSpec::check_residue(const FieldElement& a) const {
    if (!is_prime_field()) throw StructuralError("field mismatch: residue element in the real field");
    return a.residue_value();
}

const mpq_class& FieldSpec::check_rational(const FieldElement& a) const {
    if (is_prime_field()) throw StructuralError("field mismatch: rational element in a prime field");
    return a.rational_value();
}

FieldElement FieldSpec::zero() const {
    return is_prime_field() ? FieldElement::residue(0) : FieldElement::rational(mpq_class(0));
}

FieldElement FieldSpec::one() const {
    return is_prime_field() ? FieldElement::residue(1 % p_) : FieldElement::rational(mpq_class(1));
}

FieldElement FieldSpec::from_int(long long v) const {
    if (is_prime_field()) {
        std::int64_t r = static_cast<std::int64_t>(v % static_cast<std::int64_t>(p_));
        if (r < 0) r += static_cast<std::int64_t>(p_);
        return FieldElement::residue(static_cast<std::uint64_t>(r));
    }
    return FieldElement::rational(mpq_class(static_cast<long>(v)));
}

FieldElement FieldSpec::from_ratio(long long num, long long den) const {
    if (den == 0) throw StructuralError("division by zero in ratio literal");
    if (is_prime_field()) return div(from_int(num), from_int(den));
    mpq_class q;
    q = mpq_class(static_cast<long>(num)) / mpq_class(static_cast<long>(den));
    return FieldElement::rational(q);
}

FieldElement FieldSpec::from_rational(const mpq_class& q) const {
    if (!is_prime_field()) return FieldElement::rational(q);
    const std::uint64_t num = mpz_fdiv_ui(q.get_num().get_mpz_t(), p_);
    const std::uint64_t den = mpz_fdiv_ui(q.get_den().get_mpz_t(), p_);
    if (den == 0) {
        throw StructuralError("entry " + q.get_str() + " has no image in GF(" + std::to_string(p_) +
                              "): denominator divisible by the modulus");
    }
    return FieldElement::residue(mul_mod(num, inv_mod(den, p_), p_));
}

FieldElement FieldSpec::parse_entry(const std::string& text) const {
    if (text.empty()) throw StructuralError("empty matrix entry");
    mpq_class q;
    if (q.set_str(text, 10) != 0) {
        throw StructuralError("invalid matrix entry \"" + text + "\"");
    }
    if (q.get_den() == 0) throw StructuralError("division by zero in entry \"" + text + "\"");
    q.canonicalize();
    return from_rational(q);
}

FieldElement FieldSpec::add(const FieldElement& a, const FieldElement& b) const {
    if (is_prime_field()) {
        std::uint64_t x = check_residue(a), y = check_residue(b);
        std::uint64_t s = x + y; // wraparound-safe: s - p is exact mod 2^64 in both branches
        if (s < x || s >= p_) s -= p_;
        return FieldElement::residue(s);
    }
    return FieldElement::rational(check_rational(a) + check_rational(b));
}

FieldElement FieldSpec::sub(const FieldElement& a, const FieldElement& b) const {
    if (is_prime_field()) {
        std::uint64_t x = check_residue(a), y = check_residue(b);
        return FieldElement::residue(x >= y ? x - y : x + (p_ - y));
    }
    return FieldElement::rational(check_rational(a) - check_rational(b));
}

FieldElement FieldSpec::mul(const FieldElement& a, const FieldElement& b) const {
    if (is_prime_field()) {
        return FieldElement::residue(mul_mod(check_residue(a), check_residue(b), p_));
    }
    return FieldElement::rational(check_rational(a) * check_rational(b));
}

FieldElement FieldSpec::neg(const FieldElement& a) const {
    if (is_prime_field()) {
        std::uint64_t x = check_residue(a);
        return FieldElement::residue(x == 0 ? 0 : p_ - x);
    }
    return FieldElement::rational(-check_rational(a));
}

FieldElement FieldSpec::inv(const FieldElement& a) const {
    if (is_zero(a)) throw StructuralError("division by zero: no inverse of 0");
    if (is_prime_field()) return FieldElement::residue(inv_mod(check_residue(a), p_));
    return FieldElement::rational(1 / check_rational(a));
}

FieldElement FieldSpec::div(const FieldElement& a, const FieldElement& b) const {
    return mul(a, inv(b));
}

bool FieldSpec::is_zero(const FieldElement& a) const {
    return is_prime_field() ? check_residue(a) == 0 : check_rational(a) == 0;
}

bool FieldSpec::is_one(const FieldElement& a) const {
    return is_prime_field() ? check_residue(a) == 1 % p_ : check_rational(a) == 1;
}

double FieldSpec::to_double(const FieldElement& a) const {
    if (is_prime_field()) return static_cast<double>(check_residue(a));
    return check_rational(a).get_d();
}

std::string FieldSpec::to_string(const FieldElement& a) const {
    if (is_prime_field()) return std::to_string(check_residue(a));
    return check_rational(a).get_str();
}

} // namespace seclin
