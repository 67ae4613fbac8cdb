#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace valgen {

using Rational = mpq_class;
using Integer = mpz_class;

/*
 * An element of lexicographically ordered Q^r (r = 1 or 2), or the
 * distinguished element INF which is larger than everything finite.
 * The first coordinate is the most significant one.
 */
class Value {
public:
    Value() : Value(std::vector<Rational>{Rational(0)}) {}
    explicit Value(std::vector<Rational> coords);
    Value(std::initializer_list<Rational> coords) : Value(std::vector<Rational>(coords)) {}

    static Value infinity();
    static Value zero(int rank);
    static Value scalar(const Rational& q) { return Value({q}); }

    bool is_inf() const noexcept { return inf_; }
    bool is_zero() const;
    int rank() const;
    const std::vector<Rational>& coords() const;
    const Rational& operator[](std::size_t i) const { return coords()[i]; }

    Value operator+(const Value& o) const;
    Value operator-(const Value& o) const;
    Value operator-() const;
    Value& operator+=(const Value& o) { return *this = *this + o; }
    Value times(const Integer& k) const;
    Value times(long k) const { return times(Integer(k)); }
    /// Exact division by a positive integer; INF stays INF.
    Value divided_by(const Integer& k) const;
    Value divided_by(long k) const { return divided_by(Integer(k)); }

    std::strong_ordering operator<=>(const Value& o) const;
    bool operator==(const Value& o) const;

    /// "inf", "1/2" (rank 1) or "(1/2,0)" (rank 2).
    std::string to_string() const;

private:
    void check_finite(const char* op) const;

    bool inf_ = false;
    std::vector<Rational> coords_;
};

enum class Ordering { Less, Equal, Greater };

Ordering compare_lex(const Value& a, const Value& b);

/*
 * Finitely generated subgroup of lex-ordered Q^r, kept as a row-echelon
 * (Hermite) basis with positive pivots. Each basis row is lex-positive
 * and the last row is the least positive element of the subgroup.
 */
class FGSubgroup {
public:
    FGSubgroup() = default;

    static FGSubgroup generated_by(int ambient_rank, std::span<const Value> gens);
    static FGSubgroup standard_lattice(int ambient_rank);

    int ambient_rank() const noexcept { return ambient_rank_; }
    int lattice_rank() const noexcept { return static_cast<int>(basis_.size()); }
    const std::vector<Value>& basis() const noexcept { return basis_; }

    bool contains(const Value& v) const;
    bool contains(const FGSubgroup& other) const;
    std::optional<Value> least_positive() const;

    bool operator==(const FGSubgroup& o) const = default;

    std::string to_string() const;

private:
    int ambient_rank_ = 1;
    std::vector<Value> basis_;
    std::vector<int> pivots_;
};

struct CosetReps {
    std::vector<Value> reps;
};

/// (gamma : delta), or nullopt when the index is infinite.
std::optional<std::uint64_t> subgroup_index(const FGSubgroup& gamma, const FGSubgroup& delta);

/// Number of gamma elements g with 0 <= g < every positive element of delta.
std::uint64_t initial_index(const FGSubgroup& gamma, const FGSubgroup& delta);

/// True iff 0 <= g and g is below every positive element of delta.
bool below_positive_cone(const FGSubgroup& delta, const Value& g);

/// Strictly increasing coset representatives 0 = g_1 < ... < g_e < delta_{>0};
/// nullopt when the initial index is smaller than the index.
std::optional<CosetReps> increasing_coset_reps(const FGSubgroup& gamma, const FGSubgroup& delta);

std::string rational_to_string(const Rational& q);
Rational parse_rational(const std::string& s);

}  // namespace valgen
