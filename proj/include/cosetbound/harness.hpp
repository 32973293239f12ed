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

#ifndef COSETBOUND_HARNESS_HPP
#define COSETBOUND_HARNESS_HPP

#include <atomic>
#include <chrono>
#include <cstdint>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "bounds.hpp"
#include "counting.hpp"
#include "errors.hpp"
#include "ffield.hpp"
#include "rng.hpp"
#include "stepanov.hpp"

namespace cosetbound {

// ===========================================================================
// Records
// ===========================================================================

/// One sweep row. Fields mirror the CSV columns exactly; everything is kept
/// as a string so that CSV and JSON serialize the identical record set and
/// reparse losslessly. Missing fields stay empty, never omitted.
struct ExperimentRecord {
    enum Col {
        kP = 0, kT, kG1, kG2, kPoly, kM, kN, kH, kQ, kMethod, kCount,
        kBoundTh1, kBoundThsr, kBoundEnergy, kBoundHk, kBoundCz,
        kApplicable, kPassed, kCertBound, kSeed, kWallMs, kNumCols
    };

    static const std::array<std::string, kNumCols>& columns() {
        static const std::array<std::string, kNumCols> names = {
            "p", "t", "g1", "g2", "poly", "m", "n", "h", "q", "method", "count",
            "bound_th1", "bound_thsr", "bound_energy", "bound_hk", "bound_cz",
            "applicable", "passed", "cert_bound", "seed", "wall_ms"};
        return names;
    }

    std::array<std::string, kNumCols> fields;

    std::string& operator[](Col c) { return fields[c]; }
    const std::string& operator[](Col c) const { return fields[c]; }

    bool operator==(const ExperimentRecord& o) const { return fields == o.fields; }
};

namespace detail {

inline std::string csv_quote(const std::string& s) {
    bool needs = s.find_first_of(",\"\n") != std::string::npos;
    if (!needs) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += "\"";
    return out;
}

}  // namespace detail

inline std::string records_to_csv(const std::vector<ExperimentRecord>& records) {
    std::string out;
    const auto& cols = ExperimentRecord::columns();
    for (std::size_t i = 0; i < cols.size(); ++i) {
        if (i) out += ",";
        out += cols[i];
    }
    out += "\n";
    for (const auto& r : records) {
        for (std::size_t i = 0; i < r.fields.size(); ++i) {
            if (i) out += ",";
            out += detail::csv_quote(r.fields[i]);
        }
        out += "\n";
    }
    return out;
}

inline std::vector<ExperimentRecord> records_from_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> cur;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            cur.push_back(std::move(field));
            field.clear();
        } else if (c == '\n') {
            cur.push_back(std::move(field));
            field.clear();
            rows.push_back(std::move(cur));
            cur.clear();
        } else {
            field += c;
        }
    }
    if (!field.empty() || !cur.empty()) {
        cur.push_back(std::move(field));
        rows.push_back(std::move(cur));
    }
    std::vector<ExperimentRecord> out;
    for (std::size_t i = 1; i < rows.size(); ++i) {  // row 0 is the header
        if (rows[i].size() != ExperimentRecord::kNumCols)
            throw ConfigError("CSV row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                              " fields, expected " + std::to_string(int(ExperimentRecord::kNumCols)));
        ExperimentRecord r;
        for (std::size_t j = 0; j < r.fields.size(); ++j) r.fields[j] = rows[i][j];
        out.push_back(std::move(r));
    }
    return out;
}

inline std::string records_to_json(const std::vector<ExperimentRecord>& records) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    const auto& cols = ExperimentRecord::columns();
    for (const auto& r : records) {
        nlohmann::ordered_json obj;
        for (std::size_t i = 0; i < cols.size(); ++i) obj[cols[i]] = r.fields[i];
        arr.push_back(std::move(obj));
    }
    return arr.dump(2) + "\n";
}

inline std::vector<ExperimentRecord> records_from_json(const std::string& text) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::parse(text);
    std::vector<ExperimentRecord> out;
    const auto& cols = ExperimentRecord::columns();
    for (const auto& obj : arr) {
        ExperimentRecord r;
        for (std::size_t i = 0; i < cols.size(); ++i) r.fields[i] = obj.at(cols[i]).get<std::string>();
        out.push_back(std::move(r));
    }
    return out;
}

/// The falsification tripwire: true iff some record has an applicable bound
/// that the exact count exceeded (or an oracle/soundness mismatch marked it
/// failed). Runs exit nonzero when this fires.
inline bool any_violation(const std::vector<ExperimentRecord>& records) {
    for (const auto& r : records)
        if (r[ExperimentRecord::kPassed] == "false") return true;
    return false;
}

// ===========================================================================
// Configuration
// ===========================================================================

struct RunConfig {
    std::uint64_t p = 0;
    std::uint64_t t = 0;
    bool t_all = false;
    std::uint64_t t_min = 0, t_max = 0;
    std::string poly;
    std::string fpoly, gpoly;  // composed-energy inputs
    std::uint64_t g1 = 1, g2 = 1;
    std::vector<unsigned> qs;
    std::uint32_t h = 1;
    std::vector<std::uint64_t> ls;
    std::uint64_t gamma = 0;
    std::string method = "rootfind";
    bool certify = false;
    std::uint64_t seed = 0;
    std::uint64_t chi = 0;
    bool has_chi = false;
    bool timing = true;
    // sweep controls
    std::string mode;
    std::size_t instances = 0;
    std::uint64_t p_min = 0, p_max = 0;
    std::uint32_t deg_max = 3;
    std::uint32_t h_max = 4;
    unsigned workers = 1;
};

namespace detail {

class WallTimer {
   public:
    explicit WallTimer(bool enabled) : enabled_(enabled), start_(std::chrono::steady_clock::now()) {}
    std::string ms() const {
        if (!enabled_) return "";
        auto d = std::chrono::steady_clock::now() - start_;
        return std::to_string(std::chrono::duration_cast<std::chrono::milliseconds>(d).count());
    }

   private:
    bool enabled_;
    std::chrono::steady_clock::time_point start_;
};

inline std::string bool_str(bool b) { return b ? "true" : "false"; }

/// Applies one bound to a count: renders the value, folds applicability and
/// pass/fail into the record-wide flags.
struct BoundFolder {
    bool any_applicable = false;
    bool any_evaluated = false;
    bool violated = false;

    std::string fold(const BoundReport& r, const mpz_class& count) {
        any_evaluated = true;
        if (r.applicable) {
            any_applicable = true;
            if (!r.dominates(count)) violated = true;
        }
        return r.decimal(6);
    }

    void finish(ExperimentRecord& rec) const {
        if (!any_evaluated) return;
        rec[ExperimentRecord::kApplicable] = bool_str(any_applicable);
        rec[ExperimentRecord::kPassed] = bool_str(!violated);
    }
};

inline void mark_failed(ExperimentRecord& rec) { rec[ExperimentRecord::kPassed] = "false"; }

/// Deterministic random prime in [lo, hi].
inline std::uint64_t random_prime(SplitMix64& rng, std::uint64_t lo, std::uint64_t hi) {
    for (;;) {
        std::uint64_t c = rng.range(lo, hi) | 1;
        if (c >= 3 && is_prime_u64(c)) return c;
    }
}

inline BiPoly random_poly_budget(const FieldCtx& ctx, std::uint32_t mx, std::uint32_t my, SplitMix64& rng) {
    BiPoly f(ctx);
    for (std::uint32_t i = 0; i <= mx; ++i)
        for (std::uint32_t j = 0; j <= my; ++j)
            if (rng.below(3) != 0) f.set(i, j, static_cast<Elt>(rng.below(ctx.p())));
    if (f.is_zero()) f.set(0, 0, 1);
    return f;
}

}  // namespace detail

// ===========================================================================
// Run drivers
// ===========================================================================

/// Count solutions for one instance (or all divisors t of p-1 in range when
/// t_all is set); attach every applicable bound; optionally certify.
inline std::vector<ExperimentRecord> run_count(const RunConfig& cfg) {
    if (cfg.p == 0 || cfg.poly.empty()) throw ConfigError("count: p and poly are required");
    FieldCtx ctx(static_cast<std::uint32_t>(cfg.p));
    BiPoly poly = parse_poly(cfg.poly, ctx);
    if (poly.is_zero()) throw ConfigError("count: poly must be nonzero");

    std::vector<std::uint64_t> ts;
    if (cfg.t_all) {
        std::uint64_t lo = cfg.t_min ? cfg.t_min : 1;
        std::uint64_t hi = cfg.t_max ? cfg.t_max : cfg.p - 1;
        for (std::uint64_t d : divisors(cfg.p - 1))
            if (d >= lo && d <= hi) ts.push_back(d);
    } else {
        if (cfg.t == 0) throw ConfigError("count: t (or t_all) is required");
        ts.push_back(cfg.t);
    }

    std::vector<std::string> methods;
    if (cfg.method == "both") {
        methods = {"naive", "rootfind"};
    } else if (cfg.method == "naive" || cfg.method == "rootfind") {
        methods = {cfg.method};
    } else {
        throw ConfigError("count: unknown method '" + cfg.method + "'");
    }

    std::vector<ExperimentRecord> out;
    for (std::uint64_t t : ts) {
        Subgroup g = subgroup_of_order(ctx, static_cast<std::uint32_t>(t));
        Coset c1 = make_coset(static_cast<Elt>(cfg.g1 % cfg.p), g);
        Coset c2 = make_coset(static_cast<Elt>(cfg.g2 % cfg.p), g);
        std::uint64_t m = static_cast<std::uint64_t>(std::max(poly.deg_x(), 0L));
        std::uint64_t n = static_cast<std::uint64_t>(std::max(poly.deg_y(), 0L));
        std::vector<std::size_t> method_counts;
        for (const std::string& method : methods) {
            detail::WallTimer timer(cfg.timing);
            ExperimentRecord rec;
            rec[ExperimentRecord::kP] = std::to_string(cfg.p);
            rec[ExperimentRecord::kT] = std::to_string(t);
            rec[ExperimentRecord::kG1] = std::to_string(c1.rep);
            rec[ExperimentRecord::kG2] = std::to_string(c2.rep);
            rec[ExperimentRecord::kPoly] = to_string(poly);
            rec[ExperimentRecord::kM] = std::to_string(m);
            rec[ExperimentRecord::kN] = std::to_string(n);
            rec[ExperimentRecord::kMethod] = method;
            rec[ExperimentRecord::kSeed] = std::to_string(cfg.seed);

            SolutionSet sols = count_solutions(poly, c1, c2,
                                               method == "naive" ? CountMethod::naive : CountMethod::rootfind,
                                               cfg.seed);
            method_counts.push_back(sols.count());
            mpz_class count(static_cast<unsigned long>(sols.count()));
            rec[ExperimentRecord::kCount] = count.get_str();

            detail::BoundFolder folder;
            if (m >= 1 && n >= 1) {
                rec[ExperimentRecord::kBoundTh1] = folder.fold(bound_th1(m, n, t, cfg.p), count);
                auto [hk, cz] = bound_comparators(m, n, t, cfg.p, cfg.chi);
                rec[ExperimentRecord::kBoundHk] = folder.fold(hk, count);
                if (cfg.has_chi) rec[ExperimentRecord::kBoundCz] = folder.fold(cz, count);
            }
            folder.finish(rec);

            if (cfg.certify && method == methods.back()) {
                try {
                    StepanovCertificate cert = construct_certificate(poly, c1, c2);
                    rec[ExperimentRecord::kCertBound] = std::to_string(cert.bound);
                    if (cert.bound < sols.count()) detail::mark_failed(rec);
                } catch (const Error& e) {
                    rec[ExperimentRecord::kCertBound] = std::string("error:") + e.what();
                }
            }
            rec[ExperimentRecord::kWallMs] = timer.ms();
            out.push_back(std::move(rec));
        }
        if (methods.size() == 2 && method_counts[0] != method_counts[1])
            for (auto it = out.end() - 2; it != out.end(); ++it) detail::mark_failed(*it);
    }
    return out;
}

/// Polynomial energy per q, plus the composed-image energy when f and g are
/// configured.
inline std::vector<ExperimentRecord> run_energy(const RunConfig& cfg) {
    if (cfg.p == 0 || cfg.t == 0) throw ConfigError("energy: p and t are required");
    FieldCtx ctx(static_cast<std::uint32_t>(cfg.p));
    Subgroup g = subgroup_of_order(ctx, static_cast<std::uint32_t>(cfg.t));
    std::vector<ExperimentRecord> out;

    if (!cfg.poly.empty()) {
        BiPoly poly = parse_poly(cfg.poly, ctx);
        std::uint64_t m = static_cast<std::uint64_t>(std::max(poly.deg_x(), 0L));
        std::uint64_t n = static_cast<std::uint64_t>(std::max(poly.deg_y(), 0L));
        std::vector<unsigned> qs = cfg.qs.empty() ? std::vector<unsigned>{2} : cfg.qs;
        for (unsigned q : qs) {
            detail::WallTimer timer(cfg.timing);
            ExperimentRecord rec;
            rec[ExperimentRecord::kP] = std::to_string(cfg.p);
            rec[ExperimentRecord::kT] = std::to_string(cfg.t);
            rec[ExperimentRecord::kPoly] = to_string(poly);
            rec[ExperimentRecord::kM] = std::to_string(m);
            rec[ExperimentRecord::kN] = std::to_string(n);
            rec[ExperimentRecord::kQ] = std::to_string(q);
            rec[ExperimentRecord::kSeed] = std::to_string(cfg.seed);
            mpz_class energy = polynomial_energy(poly, g, q);
            rec[ExperimentRecord::kCount] = energy.get_str();
            if (q >= 2) {
                detail::BoundFolder folder;
                BoundReport r = bound_energy(n, q, cfg.t, cfg.p);
                r.require(m == n, "m = n");
                r.require(poly.specialize_y(0).degree() >= 1, "deg P(x,0) >= 1");
                rec[ExperimentRecord::kBoundEnergy] = folder.fold(r, energy);
                folder.finish(rec);
            }
            rec[ExperimentRecord::kWallMs] = timer.ms();
            out.push_back(std::move(rec));
        }
    }

    if (!cfg.fpoly.empty() && !cfg.gpoly.empty()) {
        detail::WallTimer timer(cfg.timing);
        UniPoly f = parse_x_poly(cfg.fpoly, ctx);
        UniPoly gg = parse_x_poly(cfg.gpoly, ctx);
        ExperimentRecord rec;
        rec[ExperimentRecord::kP] = std::to_string(cfg.p);
        rec[ExperimentRecord::kT] = std::to_string(cfg.t);
        rec[ExperimentRecord::kPoly] = cfg.fpoly + " ; " + cfg.gpoly;
        std::uint64_t m = static_cast<std::uint64_t>(std::max(f.degree(), 1L));
        std::uint64_t n = static_cast<std::uint64_t>(std::max(gg.degree(), 1L));
        rec[ExperimentRecord::kM] = std::to_string(m);
        rec[ExperimentRecord::kN] = std::to_string(n);
        rec[ExperimentRecord::kSeed] = std::to_string(cfg.seed);
        mpz_class energy = composed_energy(f, gg, g);
        rec[ExperimentRecord::kCount] = energy.get_str();
        detail::BoundFolder folder;
        rec[ExperimentRecord::kBoundEnergy] = folder.fold(bound_corollaries(m, n, cfg.t, cfg.p).second, energy);
        folder.finish(rec);
        rec[ExperimentRecord::kWallMs] = timer.ms();
        out.push_back(std::move(rec));
    }
    if (out.empty()) throw ConfigError("energy: provide poly and/or both f and g");
    return out;
}

/// Count an equation family P = l_i (both directly and through the scaled
/// reduction) and compare against the family bound.
inline std::vector<ExperimentRecord> run_family(const RunConfig& cfg) {
    if (cfg.p == 0 || cfg.t == 0 || cfg.poly.empty()) throw ConfigError("family: p, t and poly are required");
    FieldCtx ctx(static_cast<std::uint32_t>(cfg.p));
    Subgroup g = subgroup_of_order(ctx, static_cast<std::uint32_t>(cfg.t));
    BiPoly poly = parse_poly(cfg.poly, ctx);
    long n = poly.total_degree();
    if (n < 1) throw ConfigError("family: poly must be nonconstant");

    std::vector<Elt> ls;
    Elt gamma = 0;
    SplitMix64 rng = SplitMix64::stream(cfg.seed, 0xfa311);
    if (!cfg.ls.empty()) {
        if (cfg.gamma == 0) throw ConfigError("family: gamma required with explicit l_i");
        gamma = static_cast<Elt>(cfg.gamma % cfg.p);
        for (std::uint64_t l : cfg.ls) ls.push_back(static_cast<Elt>(l % cfg.p));
    } else {
        // random family: gamma and l_i = gamma * v^n in pairwise distinct cosets
        gamma = static_cast<Elt>(1 + rng.below(cfg.p - 1));
        while (ls.size() < cfg.h) {
            Elt v = static_cast<Elt>(1 + rng.below(cfg.p - 1));
            Elt cand = ctx.mul(gamma, ctx.pow(v, static_cast<std::uint64_t>(n)));
            bool fresh = cand != 0;
            for (Elt prev : ls)
                if (ctx.pow(ctx.mul(cand, ctx.inv(prev)), g.t) == 1) fresh = false;
            if (fresh) ls.push_back(cand);
        }
    }

    detail::WallTimer timer(cfg.timing);
    ExperimentRecord rec;
    rec[ExperimentRecord::kP] = std::to_string(cfg.p);
    rec[ExperimentRecord::kT] = std::to_string(cfg.t);
    rec[ExperimentRecord::kPoly] = to_string(poly);
    rec[ExperimentRecord::kN] = std::to_string(n);
    rec[ExperimentRecord::kM] = std::to_string(n);
    rec[ExperimentRecord::kH] = std::to_string(ls.size());
    rec[ExperimentRecord::kMethod] = cfg.method == "naive" ? "naive" : "rootfind";
    rec[ExperimentRecord::kSeed] = std::to_string(cfg.seed);

    FamilyCount fc = count_family(poly, gamma, ls, g,
                                  cfg.method == "naive" ? CountMethod::naive : CountMethod::rootfind, cfg.seed);
    mpz_class total(static_cast<unsigned long>(fc.total));
    rec[ExperimentRecord::kCount] = total.get_str();

    detail::BoundFolder folder;
    rec[ExperimentRecord::kBoundThsr] =
        folder.fold(bound_thsr(static_cast<std::uint64_t>(n), ls.size(), cfg.t, cfg.p), total);
    folder.finish(rec);

    if (cfg.certify) {
        try {
            BiPoly q = poly - BiPoly::constant(ctx, gamma);
            std::vector<std::pair<Coset, Coset>> pairs;
            for (Elt mu : fc.mus) {
                Coset c = make_coset(ctx.inv(mu), g);
                pairs.emplace_back(c, c);
            }
            StepanovCertificate cert = construct_certificate(q, pairs);
            rec[ExperimentRecord::kCertBound] = std::to_string(cert.bound);
            if (cert.bound < fc.total) detail::mark_failed(rec);
        } catch (const Error& e) {
            rec[ExperimentRecord::kCertBound] = std::string("error:") + e.what();
        }
    }
    rec[ExperimentRecord::kWallMs] = timer.ms();
    return {rec};
}

/// Build a certificate for one instance and compare its bound with the exact
/// count. Infeasible instances yield failed-with-reason rows, not aborts.
inline std::vector<ExperimentRecord> run_certify(const RunConfig& cfg) {
    if (cfg.p == 0 || cfg.t == 0 || cfg.poly.empty()) throw ConfigError("certify: p, t and poly are required");
    FieldCtx ctx(static_cast<std::uint32_t>(cfg.p));
    Subgroup g = subgroup_of_order(ctx, static_cast<std::uint32_t>(cfg.t));
    Coset c1 = make_coset(static_cast<Elt>(cfg.g1 % cfg.p), g);
    Coset c2 = make_coset(static_cast<Elt>(cfg.g2 % cfg.p), g);
    BiPoly poly = parse_poly(cfg.poly, ctx);

    detail::WallTimer timer(cfg.timing);
    ExperimentRecord rec;
    rec[ExperimentRecord::kP] = std::to_string(cfg.p);
    rec[ExperimentRecord::kT] = std::to_string(cfg.t);
    rec[ExperimentRecord::kG1] = std::to_string(c1.rep);
    rec[ExperimentRecord::kG2] = std::to_string(c2.rep);
    rec[ExperimentRecord::kPoly] = to_string(poly);
    rec[ExperimentRecord::kM] = std::to_string(std::max(poly.deg_x(), 0L));
    rec[ExperimentRecord::kN] = std::to_string(std::max(poly.deg_y(), 0L));
    rec[ExperimentRecord::kMethod] = "rootfind";
    rec[ExperimentRecord::kSeed] = std::to_string(cfg.seed);

    SolutionSet sols = count_solutions(poly, c1, c2, CountMethod::rootfind, cfg.seed);
    mpz_class count(static_cast<unsigned long>(sols.count()));
    rec[ExperimentRecord::kCount] = count.get_str();

    std::uint64_t m = static_cast<std::uint64_t>(std::max(poly.deg_x(), 0L));
    std::uint64_t n = static_cast<std::uint64_t>(std::max(poly.deg_y(), 0L));
    detail::BoundFolder folder;
    if (m >= 1 && n >= 1) rec[ExperimentRecord::kBoundTh1] = folder.fold(bound_th1(m, n, cfg.t, cfg.p), count);
    folder.finish(rec);

    try {
        StepanovCertificate cert = construct_certificate(poly, c1, c2);
        bool verified = verify_certificate(cert, poly, c1, c2, sols.points);
        cert.checks.point_vanishing_verified = verified;
        rec[ExperimentRecord::kCertBound] = std::to_string(cert.bound);
        if (!verified || cert.bound < sols.count() || !cert.checks.all_construction()) detail::mark_failed(rec);
    } catch (const Error& e) {
        rec[ExperimentRecord::kCertBound] = std::string("error:") + e.what();
    }
    rec[ExperimentRecord::kWallMs] = timer.ms();
    return {rec};
}

// ===========================================================================
// Sweeps
// ===========================================================================

namespace detail {

/// Deterministic parallel map over instances: worker count never changes the
/// result, only the wall time.
template <typename Fn>
std::vector<ExperimentRecord> parallel_instances(std::size_t count, unsigned workers, Fn&& fn) {
    std::vector<std::vector<ExperimentRecord>> results(count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) results[i] = fn(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (;;) {
                    std::size_t i = next.fetch_add(1);
                    if (i >= count) return;
                    results[i] = fn(i);
                }
            });
        for (auto& th : pool) th.join();
    }
    std::vector<ExperimentRecord> out;
    for (auto& chunk : results)
        for (auto& r : chunk) out.push_back(std::move(r));
    return out;
}

}  // namespace detail

/// Seeded sweeps. Modes:
///   oracle  — random instances counted with both methods; rows fail on
///             method disagreement.
///   th1     — random lines x - y + mu with p in [p_min, p_max], t | p-1
///             satisfying 100 < t and 81 t^4 < p^3.
///   family  — random homogeneous families of degree deg (default 2), h <=
///             h_max, pairwise-distinct-coset right-hand sides.
///   energy  — random polynomials, q in qs (default 2..5).
///   certify — random certified lines over t where the parameters are
///             feasible.
inline std::vector<ExperimentRecord> run_sweep(const RunConfig& cfg) {
    if (cfg.instances == 0) throw ConfigError("sweep: instances must be positive");
    std::uint64_t seed = cfg.seed;

    if (cfg.mode == "oracle") {
        std::uint64_t p_min = cfg.p_min ? cfg.p_min : 101, p_max = cfg.p_max ? cfg.p_max : 100000;
        std::uint64_t t_max = cfg.t_max ? cfg.t_max : 200;
        return detail::parallel_instances(cfg.instances, cfg.workers, [&](std::size_t i) {
            SplitMix64 rng = SplitMix64::stream(seed, i);
            RunConfig inst;
            inst.seed = seed + i;
            inst.timing = cfg.timing;
            inst.method = "both";
            for (;;) {
                inst.p = detail::random_prime(rng, p_min, p_max);
                std::vector<std::uint64_t> ts;
                for (std::uint64_t d : divisors(inst.p - 1))
                    if (d <= t_max) ts.push_back(d);
                if (ts.empty()) continue;
                inst.t = ts[rng.below(ts.size())];
                break;
            }
            FieldCtx ctx(static_cast<std::uint32_t>(inst.p));
            SplitMix64 prng = SplitMix64::stream(seed, i ^ 0xabcdefULL);
            BiPoly poly = detail::random_poly_budget(ctx, cfg.deg_max, cfg.deg_max, prng);
            inst.poly = to_string(poly);
            inst.g1 = 1 + prng.below(inst.p - 1);
            inst.g2 = 1 + prng.below(inst.p - 1);
            return run_count(inst);
        });
    }

    if (cfg.mode == "th1") {
        std::uint64_t p_min = cfg.p_min ? cfg.p_min : 100000, p_max = cfg.p_max ? cfg.p_max : 1000000;
        return detail::parallel_instances(cfg.instances, cfg.workers, [&](std::size_t i) {
            SplitMix64 rng = SplitMix64::stream(seed, i);
            RunConfig inst;
            inst.seed = seed + i;
            inst.timing = cfg.timing;
            inst.method = "rootfind";
            inst.certify = cfg.certify;
            for (;;) {
                inst.p = detail::random_prime(rng, p_min, p_max);
                mpz_class p3 = ipow(mpz_class(static_cast<unsigned long>(inst.p)), 3);
                std::vector<std::uint64_t> ts;
                for (std::uint64_t d : divisors(inst.p - 1)) {
                    if (d <= 100) continue;
                    if (81 * ipow(mpz_class(static_cast<unsigned long>(d)), 4) < p3) ts.push_back(d);
                }
                if (ts.empty()) continue;
                inst.t = ts[rng.below(ts.size())];
                break;
            }
            std::uint64_t mu = 1 + rng.below(inst.p - 1);
            inst.poly = "x - y + " + std::to_string(mu);
            inst.g1 = 1 + rng.below(inst.p - 1);
            inst.g2 = 1 + rng.below(inst.p - 1);
            return run_count(inst);
        });
    }

    if (cfg.mode == "family") {
        std::uint64_t p_min = cfg.p_min ? cfg.p_min : 5000, p_max = cfg.p_max ? cfg.p_max : 100000;
        std::uint64_t t_min = cfg.t_min ? cfg.t_min : 100, t_max = cfg.t_max ? cfg.t_max : 400;
        return detail::parallel_instances(cfg.instances, cfg.workers, [&](std::size_t i) {
            SplitMix64 rng = SplitMix64::stream(seed, i);
            RunConfig inst;
            inst.seed = seed + i;
            inst.timing = cfg.timing;
            inst.method = cfg.method == "naive" ? "naive" : "rootfind";
            inst.h = 1 + static_cast<std::uint32_t>(rng.below(cfg.h_max));
            for (;;) {
                inst.p = detail::random_prime(rng, p_min, p_max);
                std::vector<std::uint64_t> ts;
                for (std::uint64_t d : divisors(inst.p - 1))
                    if (d >= t_min && d <= t_max) ts.push_back(d);
                if (ts.empty()) continue;
                inst.t = ts[rng.below(ts.size())];
                break;
            }
            FieldCtx ctx(static_cast<std::uint32_t>(inst.p));
            // homogeneous of degree 2 with nonzero x^2 coefficient
            Elt a = static_cast<Elt>(1 + rng.below(inst.p - 1));
            Elt b = static_cast<Elt>(rng.below(inst.p));
            Elt c = static_cast<Elt>(rng.below(inst.p));
            BiPoly poly(ctx);
            poly.set(2, 0, a);
            poly.set(1, 1, b);
            poly.set(0, 2, c);
            inst.poly = to_string(poly);
            return run_family(inst);
        });
    }

    if (cfg.mode == "energy") {
        std::uint64_t p_min = cfg.p_min ? cfg.p_min : 3000, p_max = cfg.p_max ? cfg.p_max : 100000;
        std::uint64_t t_min = cfg.t_min ? cfg.t_min : 101, t_max = cfg.t_max ? cfg.t_max : 300;
        return detail::parallel_instances(cfg.instances, cfg.workers, [&](std::size_t i) {
            SplitMix64 rng = SplitMix64::stream(seed, i);
            RunConfig inst;
            inst.seed = seed + i;
            inst.timing = cfg.timing;
            inst.qs = cfg.qs.empty() ? std::vector<unsigned>{2, 3, 4, 5} : cfg.qs;
            for (;;) {
                inst.p = detail::random_prime(rng, p_min, p_max);
                std::vector<std::uint64_t> ts;
                for (std::uint64_t d : divisors(inst.p - 1))
                    if (d >= t_min && d <= t_max) ts.push_back(d);
                if (ts.empty()) continue;
                inst.t = ts[rng.below(ts.size())];
                break;
            }
            FieldCtx ctx(static_cast<std::uint32_t>(inst.p));
            std::uint32_t deg = 1 + static_cast<std::uint32_t>(rng.below(2));
            BiPoly poly = detail::random_poly_budget(ctx, deg, deg, rng);
            poly.set(deg, 0, static_cast<Elt>(1 + rng.below(inst.p - 1)));  // deg P(x,0) >= 1
            inst.poly = to_string(poly);
            return run_energy(inst);
        });
    }

    if (cfg.mode == "certify") {
        static const std::uint64_t kFeasibleT[] = {125, 216, 343, 512, 729, 1000};
        return detail::parallel_instances(cfg.instances, cfg.workers, [&](std::size_t i) {
            SplitMix64 rng = SplitMix64::stream(seed, i);
            RunConfig inst;
            inst.seed = seed + i;
            inst.timing = cfg.timing;
            inst.t = kFeasibleT[rng.below(std::size(kFeasibleT))];
            std::uint64_t p_min = cfg.p_min ? cfg.p_min : 100000;
            inst.p = find_prime_congruent(p_min + rng.below(100000) * inst.t, inst.t, 1);
            std::uint64_t mu = 1 + rng.below(inst.p - 1);
            inst.poly = "x - y + " + std::to_string(mu);
            inst.g1 = 1 + rng.below(inst.p - 1);
            inst.g2 = 1 + rng.below(inst.p - 1);
            return run_certify(inst);
        });
    }

    throw ConfigError("sweep: unknown mode '" + cfg.mode + "'");
}

}  // namespace cosetbound

#endif  // COSETBOUND_HARNESS_HPP
