#include "valgen/value_group.hpp"

#include <algorithm>
#include <sstream>

#include "valgen/error.hpp"

namespace valgen {

std::string rational_to_string(const Rational& q) {
    Rational c(q);
    c.canonicalize();
    return c.get_str();
}

Rational parse_rational(const std::string& s) {
    std::string t;
    for (char ch : s)
        if (ch != ' ') t.push_back(ch);
    if (t.empty()) fail(ErrorKind::Spec, "empty rational");
    if (t.front() == '+') t.erase(t.begin());
    Rational q;
    if (q.set_str(t, 10) != 0) fail(ErrorKind::Spec, "malformed rational '" + s + "'");
    if (q.get_den() == 0) fail(ErrorKind::Spec, "zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

// ---------------------------------------------------------------- Value

Value::Value(std::vector<Rational> coords) : coords_(std::move(coords)) {
    if (coords_.empty() || coords_.size() > 2)
        fail(ErrorKind::Structural, "value rank must be 1 or 2");
    for (auto& c : coords_) c.canonicalize();
}

Value Value::infinity() {
    Value v;
    v.inf_ = true;
    v.coords_.clear();
    return v;
}

Value Value::zero(int rank) {
    return Value(std::vector<Rational>(static_cast<std::size_t>(rank), Rational(0)));
}

bool Value::is_zero() const {
    if (inf_) return false;
    return std::all_of(coords_.begin(), coords_.end(), [](const Rational& c) { return c == 0; });
}

int Value::rank() const {
    check_finite("rank");
    return static_cast<int>(coords_.size());
}

const std::vector<Rational>& Value::coords() const {
    check_finite("coords");
    return coords_;
}

void Value::check_finite(const char* op) const {
    if (inf_) fail(ErrorKind::Structural, std::string("INF has no ") + op);
}

Value Value::operator+(const Value& o) const {
    if (inf_ || o.inf_) return infinity();
    if (coords_.size() != o.coords_.size()) fail(ErrorKind::Structural, "rank mismatch in value addition");
    std::vector<Rational> r(coords_.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = coords_[i] + o.coords_[i];
    return Value(std::move(r));
}

Value Value::operator-() const {
    check_finite("negation");
    std::vector<Rational> r(coords_.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = -coords_[i];
    return Value(std::move(r));
}

Value Value::operator-(const Value& o) const {
    if (o.inf_) fail(ErrorKind::Structural, "cannot subtract INF");
    if (inf_) return infinity();
    return *this + (-o);
}

Value Value::times(const Integer& k) const {
    if (inf_) {
        if (k <= 0) fail(ErrorKind::Structural, "INF scaled by non-positive integer");
        return infinity();
    }
    std::vector<Rational> r(coords_.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = coords_[i] * Rational(k);
    return Value(std::move(r));
}

Value Value::divided_by(const Integer& k) const {
    if (k <= 0) fail(ErrorKind::Argument, "values divide by positive integers only");
    if (inf_) return infinity();
    std::vector<Rational> r(coords_.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = coords_[i] / Rational(k);
    return Value(std::move(r));
}

std::strong_ordering Value::operator<=>(const Value& o) const {
    switch (compare_lex(*this, o)) {
    case Ordering::Less: return std::strong_ordering::less;
    case Ordering::Greater: return std::strong_ordering::greater;
    default: return std::strong_ordering::equal;
    }
}

bool Value::operator==(const Value& o) const {
    return compare_lex(*this, o) == Ordering::Equal;
}

std::string Value::to_string() const {
    if (inf_) return "inf";
    if (coords_.size() == 1) return rational_to_string(coords_[0]);
    std::string s = "(";
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (i) s += ",";
        s += rational_to_string(coords_[i]);
    }
    return s + ")";
}

Ordering compare_lex(const Value& a, const Value& b) {
    if (a.is_inf() || b.is_inf()) {
        if (a.is_inf() && b.is_inf()) return Ordering::Equal;
        return a.is_inf() ? Ordering::Greater : Ordering::Less;
    }
    if (a.rank() != b.rank()) fail(ErrorKind::Structural, "rank mismatch in comparison");
    for (int i = 0; i < a.rank(); ++i) {
        int c = cmp(a[i], b[i]);
        if (c < 0) return Ordering::Less;
        if (c > 0) return Ordering::Greater;
    }
    return Ordering::Equal;
}

// ---------------------------------------------------------- FGSubgroup

namespace {

Integer floor_div(const Integer& a, const Integer& b) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

void row_axpy(std::vector<Integer>& dst, const Integer& k, const std::vector<Integer>& src) {
    for (std::size_t j = 0; j < dst.size(); ++j) dst[j] -= k * src[j];
}

bool row_zero(const std::vector<Integer>& r) {
    return std::all_of(r.begin(), r.end(), [](const Integer& x) { return x == 0; });
}

}  // namespace

FGSubgroup FGSubgroup::standard_lattice(int ambient_rank) {
    std::vector<Value> gens;
    for (int i = 0; i < ambient_rank; ++i) {
        std::vector<Rational> c(static_cast<std::size_t>(ambient_rank), Rational(0));
        c[static_cast<std::size_t>(i)] = 1;
        gens.emplace_back(std::move(c));
    }
    return generated_by(ambient_rank, gens);
}

FGSubgroup FGSubgroup::generated_by(int ambient_rank, std::span<const Value> gens) {
    if (ambient_rank < 1 || ambient_rank > 2) fail(ErrorKind::Structural, "ambient rank must be 1 or 2");
    const auto r = static_cast<std::size_t>(ambient_rank);

    Integer den = 1;
    for (const auto& g : gens) {
        if (g.is_inf()) fail(ErrorKind::Structural, "INF is not a group element");
        if (g.rank() != ambient_rank) fail(ErrorKind::Structural, "generator rank mismatch");
        for (const auto& c : g.coords()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    }

    std::vector<std::vector<Integer>> rows;
    for (const auto& g : gens) {
        std::vector<Integer> row(r);
        for (std::size_t j = 0; j < r; ++j) {
            Rational scaled = g[j] * Rational(den);
            row[j] = scaled.get_num();
        }
        if (!row_zero(row)) rows.push_back(std::move(row));
    }

    FGSubgroup out;
    out.ambient_rank_ = ambient_rank;
    std::size_t prow = 0;
    for (std::size_t col = 0; col < r && prow < rows.size(); ++col) {
        // Euclidean elimination below the pivot row in this column.
        for (;;) {
            std::size_t best = rows.size();
            for (std::size_t i = prow; i < rows.size(); ++i) {
                if (rows[i][col] == 0) continue;
                if (best == rows.size() || abs(rows[i][col]) < abs(rows[best][col])) best = i;
            }
            if (best == rows.size()) break;
            std::swap(rows[prow], rows[best]);
            bool reduced = true;
            for (std::size_t i = prow + 1; i < rows.size(); ++i) {
                if (rows[i][col] == 0) continue;
                row_axpy(rows[i], floor_div(rows[i][col], rows[prow][col]), rows[prow]);
                if (rows[i][col] != 0) reduced = false;
            }
            if (reduced) break;
        }
        if (rows[prow][col] == 0) continue;
        if (rows[prow][col] < 0)
            for (auto& x : rows[prow]) x = -x;
        for (std::size_t i = 0; i < prow; ++i)
            row_axpy(rows[i], floor_div(rows[i][col], rows[prow][col]), rows[prow]);
        out.pivots_.push_back(static_cast<int>(col));
        ++prow;
    }
    rows.resize(prow);

    for (const auto& row : rows) {
        std::vector<Rational> c(r);
        for (std::size_t j = 0; j < r; ++j) c[j] = Rational(row[j], den);
        out.basis_.emplace_back(std::move(c));
    }
    return out;
}

bool FGSubgroup::contains(const Value& v) const {
    if (v.is_inf()) fail(ErrorKind::Structural, "INF is not a group element");
    if (v.rank() != ambient_rank_) fail(ErrorKind::Structural, "rank mismatch in membership test");
    std::vector<Rational> rest = v.coords();
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        const auto p = static_cast<std::size_t>(pivots_[i]);
        for (std::size_t j = 0; j < p; ++j)
            if (rest[j] != 0) return false;
        Rational k = rest[p] / basis_[i][p];
        if (k.get_den() != 1) return false;
        for (std::size_t j = 0; j < rest.size(); ++j) rest[j] -= k * basis_[i][j];
    }
    return std::all_of(rest.begin(), rest.end(), [](const Rational& x) { return x == 0; });
}

bool FGSubgroup::contains(const FGSubgroup& other) const {
    if (other.ambient_rank_ != ambient_rank_) fail(ErrorKind::Structural, "rank mismatch in containment test");
    return std::all_of(other.basis_.begin(), other.basis_.end(), [&](const Value& b) { return contains(b); });
}

std::optional<Value> FGSubgroup::least_positive() const {
    if (basis_.empty()) return std::nullopt;
    return basis_.back();
}

std::string FGSubgroup::to_string() const {
    std::ostringstream os;
    os << "<";
    for (std::size_t i = 0; i < basis_.size(); ++i) os << (i ? ", " : "") << basis_[i].to_string();
    os << ">";
    return os.str();
}

// ------------------------------------------------------------- indices

namespace {

void check_pair(const FGSubgroup& gamma, const FGSubgroup& delta) {
    if (gamma.ambient_rank() != delta.ambient_rank()) fail(ErrorKind::Structural, "subgroups live in different ranks");
    if (!gamma.contains(delta)) fail(ErrorKind::Containment, "delta is not contained in gamma");
}

// Ratio of the last pivots; for lattices of equal rank and the same span it
// counts the gamma points in [0, least positive element of delta).
std::uint64_t last_pivot_ratio(const FGSubgroup& gamma, const FGSubgroup& delta) {
    const Value& dg = delta.basis().back();
    const Value& gg = gamma.basis().back();
    for (int j = 0; j < dg.rank(); ++j) {
        if (gg[static_cast<std::size_t>(j)] == 0) continue;
        Rational q = dg[static_cast<std::size_t>(j)] / gg[static_cast<std::size_t>(j)];
        if (q.get_den() != 1 || q <= 0) fail(ErrorKind::Integrity, "non-integral pivot ratio");
        return q.get_num().get_ui();
    }
    fail(ErrorKind::Integrity, "zero basis row");
}

}  // namespace

std::optional<std::uint64_t> subgroup_index(const FGSubgroup& gamma, const FGSubgroup& delta) {
    check_pair(gamma, delta);
    if (gamma.lattice_rank() != delta.lattice_rank()) return std::nullopt;
    Rational idx = 1;
    for (std::size_t i = 0; i < delta.basis().size(); ++i) {
        const Value& d = delta.basis()[i];
        const Value& g = gamma.basis()[i];
        for (int j = 0; j < d.rank(); ++j) {
            const auto c = static_cast<std::size_t>(j);
            if (g[c] != 0) {
                idx *= d[c] / g[c];
                break;
            }
        }
    }
    if (idx.get_den() != 1 || idx <= 0) fail(ErrorKind::Integrity, "non-integral subgroup index");
    return idx.get_num().get_ui();
}

bool below_positive_cone(const FGSubgroup& delta, const Value& g) {
    if (g.is_inf()) fail(ErrorKind::Structural, "INF is not a group element");
    if (g < Value::zero(g.rank())) return false;
    auto least = delta.least_positive();
    if (!least) return true;
    return g < *least;
}

std::uint64_t initial_index(const FGSubgroup& gamma, const FGSubgroup& delta) {
    auto e = subgroup_index(gamma, delta);
    if (!e) fail(ErrorKind::Unsupported, "initial index needs a finite subgroup index");
    if (delta.lattice_rank() == 0) return 1;
    return last_pivot_ratio(gamma, delta);
}

std::optional<CosetReps> increasing_coset_reps(const FGSubgroup& gamma, const FGSubgroup& delta) {
    auto e = subgroup_index(gamma, delta);
    if (!e) fail(ErrorKind::Unsupported, "coset representatives need a finite index");
    const std::uint64_t eps = initial_index(gamma, delta);
    if (eps != *e) return std::nullopt;
    CosetReps out;
    if (gamma.lattice_rank() == 0) {
        out.reps.push_back(Value::zero(gamma.ambient_rank()));
        return out;
    }
    const Value& step = gamma.basis().back();
    for (std::uint64_t k = 0; k < eps; ++k) out.reps.push_back(step.times(static_cast<long>(k)));
    return out;
}

}  // namespace valgen
