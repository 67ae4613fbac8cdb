#pragma once

// Brute-force lattice enumeration for subgroups of lex-ordered Q or Q^2
// given by two generators, independent of the Hermite-form code.

#include <optional>
#include <vector>

#include <gmpxx.h>

namespace vt::oracle {

inline mpq_class rat(long n, long d) {
    mpq_class q(n, d);
    q.canonicalize();
    return q;
}

struct Vec2 {
    mpq_class x, y;
};

// Lattice Z*u + Z*v in Q^2 with det(u, v) != 0.
struct Lattice2 {
    Vec2 u, v;

    bool contains(const mpq_class& x, const mpq_class& y) const {
        const mpq_class det = u.x * v.y - u.y * v.x;
        const mpq_class a = (x * v.y - y * v.x) / det;
        const mpq_class b = (u.x * y - u.y * x) / det;
        return a.get_den() == 1 && b.get_den() == 1;
    }
    mpz_class common_den() const {
        mpz_class d = 1;
        for (const mpq_class* q : {&u.x, &u.y, &v.x, &v.y}) d = lcm(d, q->get_den());
        return d;
    }
};

// Least positive element (0, d) of a full-rank lattice in lex Q^2.
inline mpq_class least_positive_second(const Lattice2& l) {
    const mpz_class den = l.common_den();
    for (long j = 1;; ++j) {
        mpq_class y(mpz_class(j), den);
        y.canonicalize();
        if (l.contains(0, y)) return y;
    }
}

// #{g in G : 0 <= g < delta_min} by scanning the grid (1/den)Z on the second axis;
// anything with positive first coordinate exceeds (0, d).
inline unsigned long initial_index2(const Lattice2& gamma, const Lattice2& delta) {
    const mpq_class d = least_positive_second(delta);
    const mpz_class den = gamma.common_den();
    unsigned long count = 0;
    for (long j = 0;; ++j) {
        mpq_class y(mpz_class(j), den);
        y.canonicalize();
        if (y >= d) break;
        if (gamma.contains(0, y)) ++count;
    }
    return count;
}

// Rank one: G = Z*a + Z*b in Q.
inline mpq_class rational_gcd(const mpq_class& a, const mpq_class& b) {
    const mpz_class den = lcm(a.get_den(), b.get_den());
    const mpz_class na = mpz_class(a * den), nb = mpz_class(b * den);
    mpq_class g(gcd(na, nb), den);
    g.canonicalize();
    return g;
}

inline unsigned long initial_index1(const mpq_class& gamma_gen, const mpq_class& delta_gen) {
    // Scan multiples of the generator, not the quotient.
    unsigned long count = 0;
    for (mpq_class g = 0; g < delta_gen; g += gamma_gen) ++count;
    return count;
}

}  // namespace vt::oracle
