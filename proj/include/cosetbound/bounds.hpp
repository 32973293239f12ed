/*
   Copyright 2026 The cosetbound authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef COSETBOUND_BOUNDS_HPP
#define COSETBOUND_BOUNDS_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace cosetbound {

inline mpz_class ipow(const mpz_class& base, unsigned long e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

/// floor(x^(1/k)) for x >= 0.
inline mpz_class iroot_floor(const mpz_class& x, unsigned long k) {
    mpz_class r;
    mpz_root(r.get_mpz_t(), x.get_mpz_t(), k);
    return r;
}

/// A bound of the form (num/den)^(1/root). Decisions against integer counts
/// are made by raising both sides to the root index, never through floating
/// point; decimal output exists only for report columns.
struct BoundReport {
    std::string name;
    mpz_class num;
    mpz_class den = 1;
    unsigned root = 1;
    bool applicable = true;
    std::vector<std::string> violated;  // names of failed hypotheses
    std::string note;

    /// Exact decision: count <= bound.
    bool dominates(const mpz_class& count) const {
        if (count < 0) return true;
        return ipow(count, root) * den <= num;
    }

    /// Deterministic decimal rendering with fixed fractional digits,
    /// truncated toward zero.
    std::string decimal(unsigned frac_digits = 6) const {
        mpz_class scaled = num * ipow(10, static_cast<unsigned long>(frac_digits) * root);
        scaled /= den;
        mpz_class r = iroot_floor(scaled, root);
        std::string digits = r.get_str();
        if (digits.size() <= frac_digits) digits.insert(0, frac_digits + 1 - digits.size(), '0');
        digits.insert(digits.size() - frac_digits, ".");
        return digits;
    }

    void require(bool ok, const std::string& hypothesis) {
        if (!ok) {
            applicable = false;
            violated.push_back(hypothesis);
        }
    }
};

namespace detail {

/// Rational upper bound on ln t with relative error below 1e-6 (much better
/// in practice). Decomposes ln t = L ln 2 + ln(t / 2^L) and evaluates the
/// atanh series with an explicit tail majorant, all in exact rationals.
inline mpq_class ln_upper(const mpz_class& t) {
    if (t <= 0) throw Error("ln_upper requires t >= 1");
    if (t == 1) return mpq_class(0);
    unsigned long level = 0;
    mpz_class pw = 1;
    while (pw * 2 <= t) {
        pw *= 2;
        ++level;
    }
    // 0.6931471805599454 > ln 2
    mpq_class ln2_ub(mpz_class("6931471805599454"), ipow(10, 16));
    mpq_class sum = mpq_class(static_cast<unsigned long>(level)) * ln2_ub;
    if (t != pw) {
        mpq_class z(t - pw, t + pw);  // in (0, 1/3)
        z.canonicalize();
        mpq_class z2 = z * z;
        mpq_class term = z;
        mpq_class acc = 0;
        const unsigned kTerms = 12;
        for (unsigned k = 0; k < kTerms; ++k) {
            acc += term / mpq_class(static_cast<unsigned long>(2 * k + 1));
            term *= z2;
        }
        // tail of 2*sum z^(2k+1)/(2k+1) is below 2 z^(2K+1) / ((2K+1)(1-z^2))
        mpq_class tail = term / (mpq_class(static_cast<unsigned long>(2 * kTerms + 1)) * (mpq_class(1) - z2));
        sum += 2 * (acc + tail);
    }
    sum.canonicalize();
    return sum;
}

inline void reduce_fraction(mpz_class& num, mpz_class& den) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

}  // namespace detail

/// 16 m n^2 (m+n) t^(2/3): the coset-restricted solution-count bound.
/// Hypotheses 100(mn)^{3/2} < t and t < p^{3/4}/3 are checked exactly when p
/// is supplied (pass p = 0 to skip the p-dependent check).
inline BoundReport bound_th1(std::uint64_t m, std::uint64_t n, std::uint64_t t, std::uint64_t p = 0) {
    BoundReport r;
    r.name = "th1";
    r.root = 3;
    mpz_class mm(static_cast<unsigned long>(m)), nn(static_cast<unsigned long>(n)), tt(static_cast<unsigned long>(t));
    r.num = ipow(16 * mm * nn * nn * (mm + nn), 3) * tt * tt;
    r.require(ipow(10, 4) * ipow(mm * nn, 3) < tt * tt, "100(mn)^(3/2) < t");
    if (p != 0) {
        mpz_class pp(static_cast<unsigned long>(p));
        r.require(81 * ipow(tt, 4) < ipow(pp, 3), "t < p^(3/4)/3");
    }
    return r;
}

/// 32 h^(3/4) n^5 t^(2/3): the family-count bound.
inline BoundReport bound_thsr(std::uint64_t n, std::uint64_t h, std::uint64_t t, std::uint64_t p = 0) {
    BoundReport r;
    r.name = "th-sr";
    r.root = 12;
    mpz_class nn(static_cast<unsigned long>(n)), hh(static_cast<unsigned long>(h)), tt(static_cast<unsigned long>(t));
    r.num = ipow(32, 12) * ipow(hh, 9) * ipow(nn, 60) * ipow(tt, 8);
    r.require(ipow(81 * hh, 3) < ipow(tt, 4), "h < t^(4/3)/81");
    if (p != 0) {
        mpz_class pp(static_cast<unsigned long>(p));
        r.require(27 * ipow(hh, 3) * ipow(tt, 4) < ipow(pp, 3), "h < p t^(-4/3)/3");
    }
    r.require(tt * tt > 64 * ipow(hh, 3), "t > 8h^(3/2)");
    return r;
}

/// Polynomial-energy bounds, diagonal case m = n:
///   q <= 3 : C1(n,q) t^((7q+16)/12),  C1 = 3^q 2^(17q/4-3) n^(6q-4) / (4-q)
///   q  = 4 : C3 t^(1+2q/3) ln t,      C3 = 3^(q-1) 2^(3q) n^(5q)
///   q >= 5 : C2(n,q) t^(1+2q/3),      C2 = 3^q 2^(3q+2) n^(5q) / (q-4)
/// The q = 4 logarithm is replaced by a rational upper bound so the
/// implemented bound dominates the stated one.
inline BoundReport bound_energy(std::uint64_t n, unsigned q, std::uint64_t t, std::uint64_t p = 0) {
    if (q < 2) throw BadExponent("bound_energy requires q >= 2");
    BoundReport r;
    mpz_class nn(static_cast<unsigned long>(n)), tt(static_cast<unsigned long>(t));
    if (q <= 3) {
        r.name = "th-energy(q<=3)";
        r.root = 12;
        r.num = ipow(3, 12ul * q) * ipow(2, 51ul * q - 36) * ipow(nn, 72ul * q - 48) * ipow(tt, 7ul * q + 16);
        r.den = ipow(mpz_class(4 - q), 12);
    } else if (q == 4) {
        r.name = "th-energy(q=4)";
        r.root = 3;
        mpq_class ln_ub = detail::ln_upper(tt);
        mpz_class c3 = ipow(3, 3) * ipow(2, 12) * ipow(nn, 20);
        r.num = ipow(c3, 3) * ipow(tt, 11) * ipow(ln_ub.get_num(), 3);
        r.den = ipow(ln_ub.get_den(), 3);
        r.note = "q=4 substituted into C3(n,q) and t^(1+2q/3) ln t; ln t replaced by a rational upper bound";
    } else {
        r.name = "th-energy(q>=5)";
        r.root = 3;
        r.num = ipow(3, 3ul * q) * ipow(2, 9ul * q + 6) * ipow(nn, 15ul * q) * ipow(tt, 3ul + 2 * q);
        r.den = ipow(mpz_class(q - 4), 3);
    }
    detail::reduce_fraction(r.num, r.den);
    r.require(ipow(10, 4) * ipow(nn, 6) < tt * tt, "100(mn)^(3/2) < t (m = n)");
    if (p != 0) {
        mpz_class pp(static_cast<unsigned long>(p));
        r.require(ipow(3, 12) * ipow(tt, 17) < ipow(pp, 12), "t < (p/3)^(12/17)");
    }
    return r;
}

/// The two energy corollaries: 17 m n^2 (m+n) t^(8/3) for E_P^2 over G, and
/// 16 m n^2 (m+n) t^(8/3) for E(f(G), g(G)).
inline std::pair<BoundReport, BoundReport> bound_corollaries(std::uint64_t m, std::uint64_t n, std::uint64_t t,
                                                             std::uint64_t p = 0) {
    mpz_class mm(static_cast<unsigned long>(m)), nn(static_cast<unsigned long>(n)), tt(static_cast<unsigned long>(t));
    BoundReport a;
    a.name = "corollary-EP2";
    a.root = 3;
    a.num = ipow(17 * mm * nn * nn * (mm + nn), 3) * ipow(tt, 8);
    BoundReport b;
    b.name = "corollary-composed";
    b.root = 3;
    b.num = ipow(16 * mm * nn * nn * (mm + nn), 3) * ipow(tt, 8);
    for (BoundReport* r : {&a, &b}) {
        r->require(ipow(10, 4) * ipow(mm * nn, 3) < tt * tt, "100(mn)^(3/2) < t");
        if (p != 0) {
            mpz_class pp(static_cast<unsigned long>(p));
            r->require(81 * ipow(tt, 4) < ipow(pp, 3), "t < p^(3/4)/3");
        }
    }
    return {a, b};
}

/// Literature comparators: the Heath-Brown--Konyagin 4 t^(2/3) for the
/// linear equation, and the Corvaja--Zannier
/// max(3 * 2^(1/3) (m n chi)^(1/3) t^(2/3), 12 m n t^(2/3) / p). chi is the
/// user-supplied Euler characteristic; it is not computed here.
inline std::pair<BoundReport, BoundReport> bound_comparators(std::uint64_t m, std::uint64_t n, std::uint64_t t,
                                                             std::uint64_t p, std::uint64_t chi) {
    mpz_class mm(static_cast<unsigned long>(m)), nn(static_cast<unsigned long>(n)), tt(static_cast<unsigned long>(t));
    mpz_class pp(static_cast<unsigned long>(p));
    BoundReport hk;
    hk.name = "heath-brown-konyagin";
    hk.root = 3;
    hk.num = 64 * tt * tt;
    hk.require(m == 1 && n == 1, "linear equation (m = n = 1)");
    hk.require(t < p - 1 && (pp - 1) * ipow(tt, 4) < ipow(pp - 1 - tt, 4), "t < (p-1)/((p-1)^(1/4)+1)");

    // branch 1: (54 m n chi t^2)^(1/3); branch 2: (12 m n)^3 t^2 / p^3, cube root
    mpz_class n1 = 54 * mm * nn * mpz_class(static_cast<unsigned long>(chi)) * tt * tt;
    mpz_class n2 = ipow(12 * mm * nn, 3) * tt * tt;
    mpz_class d2 = ipow(pp, 3);
    BoundReport cz;
    cz.name = "corvaja-zannier";
    cz.root = 3;
    if (n1 * d2 >= n2) {
        cz.num = n1;
    } else {
        cz.num = n2;
        cz.den = d2;
        detail::reduce_fraction(cz.num, cz.den);
    }
    cz.note = "chi supplied by the user; absolute irreducibility and multiplicative independence asserted, not checked";
    return {hk, cz};
}

}  // namespace cosetbound

#endif  // COSETBOUND_BOUNDS_HPP
