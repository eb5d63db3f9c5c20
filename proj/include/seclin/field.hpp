#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include <gmpxx.h>

#include "seclin/errors.hpp"

namespace seclin {

/// Deterministic Miller-Rabin primality test for 64-bit integers.
bool is_prime_u64(std::uint64_t n);

/// One exact scalar: a residue in [0, p) for prime fields, or an
/// arbitrary-precision rational in lowest terms for the real field.
/// Elements are immutable values; arithmetic lives on FieldSpec.
class FieldElement {
public:
    FieldElement() : v_(std::uint64_t{0}) {}

    static FieldElement residue(std::uint64_t r) { return FieldElement(r); }
    static FieldElement rational(mpq_class q) { return FieldElement(std::move(q)); }

    bool is_residue() const { return std::holds_alternative<std::uint64_t>(v_); }
    std::uint64_t residue_value() const;
    const mpq_class& rational_value() const;

    bool operator==(const FieldElement& o) const { return v_ == o.v_; }
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

private:
    explicit FieldElement(std::uint64_t r) : v_(r) {}
    explicit FieldElement(mpq_class q) : v_(std::move(q)) {}

    std::variant<std::uint64_t, mpq_class> v_;
};

enum class FieldKind { prime_field, real };

/// Arithmetic domain: GF(p) for a prime p, or the reals.
///
/// Real-field structure (ranks, null spaces, factorization identities) is
/// computed on exact rationals; floating point enters only in eigenvalues,
/// entropies and sampling. All operations keep elements canonical:
/// residues in [0, p), rationals in lowest terms with positive denominator.
class FieldSpec {
public:
    static FieldSpec gf(std::uint64_t modulus);
    static FieldSpec real();
    /// Parses "gf:<p>" or "real".
    static FieldSpec parse(const std::string& name);

    FieldKind kind() const { return kind_; }
    bool is_prime_field() const { return kind_ == FieldKind::prime_field; }
    std::uint64_t modulus() const;
    std::string name() const;

    bool operator==(const FieldSpec& o) const = default;

    FieldElement zero() const;
    FieldElement one() const;
    FieldElement from_int(long long v) const;
    FieldElement from_ratio(long long num, long long den) const;
    /// Parses an entry literal: an optionally signed integer or "a/b".
    FieldElement parse_entry(const std::string& text) const;
    /// Reduces an exact rational into this field (mod p for prime fields;
    /// fails if the denominator vanishes mod p).
    FieldElement from_rational(const mpq_class& q) const;

    FieldElement add(const FieldElement& a, const FieldElement& b) const;
    FieldElement sub(const FieldElement& a, const FieldElement& b) const;
    FieldElement mul(const FieldElement& a, const FieldElement& b) const;
    FieldElement neg(const FieldElement& a) const;
    FieldElement inv(const FieldElement& a) const;
    FieldElement div(const FieldElement& a, const FieldElement& b) const;

    bool is_zero(const FieldElement& a) const;
    bool is_one(const FieldElement& a) const;
    double to_double(const FieldElement& a) const;
    std::string to_string(const FieldElement& a) const;

private:
    FieldSpec(FieldKind k, std::uint64_t p) : kind_(k), p_(p) {}

    std::uint64_t check_residue(const FieldElement& a) const;
    const mpq_class& check_rational(const FieldElement& a) const;

    FieldKind kind_;
    std::uint64_t p_; // modulus; 0 for the real field
};

} // namespace seclin
