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

// Acceptance suite: every criterion runs end to end against an exact oracle
// and prints one PASS/FAIL line, including its runtime budget. The process
// exits nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "cosetbound/cosetbound.hpp"

using namespace cosetbound;

namespace {

int failures = 0;

struct Criterion {
    int number;
    std::string label;
    double budget_seconds;
};

void run_criterion(const Criterion& c, const std::function<bool(std::string&)>& body) {
    std::string detail;
    auto start = std::chrono::steady_clock::now();
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
        ok = false;
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool in_budget = secs < c.budget_seconds;
    std::printf("[%s] criterion %d: %s (%s; %.1f s of %.0f s budget)\n", (ok && in_budget) ? "PASS" : "FAIL",
                c.number, c.label.c_str(), detail.c_str(), secs, c.budget_seconds);
    std::fflush(stdout);
    if (!(ok && in_budget)) ++failures;
}

constexpr std::uint64_t kSuiteSeed = 20260810;

// --- criterion 1: naive vs rootfind on 200 seeded random instances --------

bool criterion_oracle(std::string& detail) {
    RunConfig cfg;
    cfg.mode = "oracle";
    cfg.instances = 200;
    cfg.seed = kSuiteSeed;
    cfg.p_min = 101;
    cfg.p_max = 100000;
    cfg.t_max = 200;
    cfg.deg_max = 3;
    cfg.timing = false;
    auto records = run_sweep(cfg);
    if (records.size() != 400) {
        detail = "expected 400 records, got " + std::to_string(records.size());
        return false;
    }
    std::size_t mismatches = 0;
    for (std::size_t i = 0; i + 1 < records.size(); i += 2)
        if (records[i][ExperimentRecord::kCount] != records[i + 1][ExperimentRecord::kCount]) ++mismatches;
    detail = "200 instances, " + std::to_string(mismatches) + " method disagreements";
    return mismatches == 0 && !any_violation(records);
}

// --- criterion 2: theorem-level count bound on random lines ----------------

bool criterion_th1_sweep(std::string& detail) {
    RunConfig cfg;
    cfg.mode = "th1";
    cfg.instances = 50;
    cfg.seed = kSuiteSeed + 1;
    cfg.p_min = 100000;
    cfg.p_max = 1000000;
    cfg.timing = false;
    auto records = run_sweep(cfg);
    if (records.size() != 50) {
        detail = "expected 50 records, got " + std::to_string(records.size());
        return false;
    }
    std::size_t violations = 0, hk_checked = 0;
    for (const auto& r : records) {
        std::uint64_t p = std::stoull(r[ExperimentRecord::kP]);
        std::uint64_t t = std::stoull(r[ExperimentRecord::kT]);
        mpz_class count(r[ExperimentRecord::kCount]);
        BoundReport th1 = bound_th1(1, 1, t, p);
        if (!th1.applicable) {
            detail = "generator produced an inapplicable instance (t=" + std::to_string(t) + ")";
            return false;
        }
        if (!th1.dominates(count)) ++violations;
        auto [hk, cz] = bound_comparators(1, 1, t, p, 0);
        (void)cz;
        if (hk.applicable) {
            ++hk_checked;
            if (!hk.dominates(count)) ++violations;
        }
    }
    detail = "50 instances, " + std::to_string(hk_checked) + " with the 4t^(2/3) hypothesis, " +
             std::to_string(violations) + " violations";
    return violations == 0 && !any_violation(records);
}

// --- criterion 3: flagship certificate -------------------------------------

bool criterion_flagship(std::string& detail) {
    std::uint64_t p = find_prime_congruent(1000000, 1000, 1);
    FieldCtx ctx(static_cast<std::uint32_t>(p));
    Subgroup g = subgroup_of_order(ctx, 1000);
    SplitMix64 rng(kSuiteSeed + 3);
    Elt mu = static_cast<Elt>(1 + rng.below(p - 1));
    BiPoly poly = parse_poly("x - y + " + std::to_string(mu), ctx);
    Coset c1 = make_coset(static_cast<Elt>(1 + rng.below(p - 1)), g);
    Coset c2 = make_coset(static_cast<Elt>(1 + rng.below(p - 1)), g);

    StepanovCertificate cert = construct_certificate(poly, c1, c2);
    if (cert.params.A != 100 || cert.params.B != 10 || cert.params.C != 10 || cert.params.D != 25) {
        detail = "unexpected parameters";
        return false;
    }
    if (cert.cols != 10000 || cert.rows >= cert.cols) {
        detail = "unexpected system shape " + std::to_string(cert.rows) + "x" + std::to_string(cert.cols);
        return false;
    }
    SolutionSet sols = count_solutions(poly, c1, c2, CountMethod::rootfind);
    bool verified = verify_certificate(cert, poly, c1, c2, sols.points);
    bool sound = cert.bound >= sols.count();
    detail = "p=" + std::to_string(p) + ", system " + std::to_string(cert.rows) + "x" + std::to_string(cert.cols) +
             ", bound " + std::to_string(cert.bound) + " vs count " + std::to_string(sols.count());
    return verified && sound && cert.checks.all_construction();
}

// --- criterion 4: derivative recursion against the composition oracle ------

bool criterion_derivatives(std::string& detail) {
    // part A: graph curves y = f(x)
    for (std::uint32_t pr : {101u, 10007u}) {
        FieldCtx ctx(pr);
        SplitMix64 rng(kSuiteSeed + pr);
        for (int iter = 0; iter < 10; ++iter) {
            std::vector<Elt> coeffs(7);
            for (auto& cf : coeffs) cf = static_cast<Elt>(rng.below(pr));
            coeffs.back() = static_cast<Elt>(1 + rng.below(pr - 1));
            UniPoly fx(ctx, coeffs);
            BiPoly p = BiPoly::monomial(ctx, 0, 1, 1) - BiPoly::from_x_poly(fx);
            UniPoly expect = fx;
            auto pairs = derivative_pairs_up_to(p, 10);
            for (const auto& dp : pairs) {
                expect = expect.derivative();
                if (dp.r != BiPoly::constant(ctx, 1)) {
                    detail = "r_k != 1 on a graph curve";
                    return false;
                }
                UniPoly composed(ctx);
                auto layers = y_layers(dp.q);
                for (std::size_t j = layers.size(); j-- > 0;) composed = composed * fx + layers[j];
                if (composed != expect) {
                    detail = "q_k(x, f(x)) != f^(k)(x) at k=" + std::to_string(dp.k);
                    return false;
                }
            }
        }
    }
    // part B: degree bounds for k <= 20 over 100 random P with bidegree <= (4,4)
    FieldCtx ctx(10007);
    SplitMix64 rng(kSuiteSeed + 4);
    for (int iter = 0; iter < 100; ++iter) {
        std::uint32_t m = 1 + static_cast<std::uint32_t>(rng.below(4));
        std::uint32_t n = 1 + static_cast<std::uint32_t>(rng.below(4));
        BiPoly p(ctx);
        for (std::uint32_t i = 0; i <= m; ++i)
            for (std::uint32_t j = 0; j <= n; ++j)
                if (rng.below(4) != 0) p.set(i, j, static_cast<Elt>(rng.below(ctx.p())));
        p.set(m, 0, static_cast<Elt>(1 + rng.below(ctx.p() - 1)));
        p.set(0, n, static_cast<Elt>(1 + rng.below(ctx.p() - 1)));
        p.set(0, 0, static_cast<Elt>(1 + rng.below(ctx.p() - 1)));

        auto pairs = derivative_pairs_up_to(p, 20);
        for (const auto& dp : pairs) {
            long k = dp.k;
            if (!dp.q.is_zero() &&
                (dp.q.deg_x() > (2 * k - 1) * long(m) - k || dp.q.deg_y() > (2 * k - 1) * long(n) - k + 1)) {
                detail = "q_k degree bound failed at k=" + std::to_string(k);
                return false;
            }
            if (!dp.r.is_zero() &&
                (dp.r.deg_x() > (2 * k - 1) * long(m) || dp.r.deg_y() > (2 * k - 1) * long(n - 1))) {
                detail = "r_k degree bound failed at k=" + std::to_string(k);
                return false;
            }
        }
        // operator factors for one (a, b, c) per P, all orders k <= 20
        std::uint64_t a = rng.below(10), b = rng.below(5), c = rng.below(5);
        std::uint64_t t = 97;
        auto factors = detail::operator_factor_grids(p, ctx.reduce(a + b * t), ctx.reduce(c * t), 20);
        for (std::size_t ki = 0; ki < factors.size(); ++ki) {
            long k = static_cast<long>(ki) + 1;
            const detail::Grid& r = factors[ki];
            if (!r.empty() && (r.deg_x() > 4 * k * long(m) || r.deg_y() > 4 * k * long(n))) {
                detail = "operator factor degree bound failed at k=" + std::to_string(k);
                return false;
            }
        }
    }
    detail = "20 graph curves (k <= 10), 100 random P (k <= 20)";
    return true;
}

// --- criterion 5: energy identities ----------------------------------------

bool criterion_energy(std::string& detail) {
    // the worked value
    {
        FieldCtx ctx(7);
        Subgroup g = subgroup_of_order(ctx, 3);
        if (polynomial_energy(parse_poly("x + y", ctx), g, 2) != 15) {
            detail = "worked example E_P^2 = 15 failed";
            return false;
        }
    }
    SplitMix64 rng(kSuiteSeed + 5);
    std::size_t comparisons = 0;
    for (std::uint32_t p = 3; p <= 101; p += 2) {
        if (!is_prime_u64(p)) continue;
        FieldCtx ctx(p);
        for (std::uint64_t t : divisors(p - 1)) {
            if (t > 8) continue;
            Subgroup g = subgroup_of_order(ctx, static_cast<std::uint32_t>(t));
            for (int iter = 0; iter < 20; ++iter) {
                BiPoly poly(ctx);
                for (std::uint32_t i = 0; i <= 2; ++i)
                    for (std::uint32_t j = 0; j <= 2; ++j)
                        if (rng.below(3) != 0) poly.set(i, j, static_cast<Elt>(rng.below(p)));
                if (poly.is_zero()) poly.set(0, 0, 1);
                // direct 4-tuple enumeration oracle
                std::vector<std::vector<Elt>> val(g.elements.size(), std::vector<Elt>(g.elements.size()));
                for (std::size_t xi = 0; xi < g.elements.size(); ++xi) {
                    UniPoly spec = poly.specialize_x(g.elements[xi]);
                    for (std::size_t yi = 0; yi < g.elements.size(); ++yi) val[xi][yi] = spec.eval(g.elements[yi]);
                }
                std::uint64_t quadruples = 0;
                for (std::size_t x1 = 0; x1 < val.size(); ++x1)
                    for (std::size_t y1 = 0; y1 < val.size(); ++y1)
                        for (std::size_t x2 = 0; x2 < val.size(); ++x2)
                            for (std::size_t y2 = 0; y2 < val.size(); ++y2)
                                if (val[x1][y1] == val[x2][y2]) ++quadruples;
                if (polynomial_energy(poly, g, 2) != mpz_class(static_cast<unsigned long>(quadruples))) {
                    detail = "E_P^2 mismatch at p=" + std::to_string(p) + ", t=" + std::to_string(t);
                    return false;
                }
                ++comparisons;
            }
        }
    }
    detail = std::to_string(comparisons) + " subgroup/polynomial pairs";
    return true;
}

// --- criterion 6: family counts and the average bound -----------------------

bool criterion_family(std::string& detail) {
    RunConfig cfg;
    cfg.mode = "family";
    cfg.instances = 20;
    cfg.seed = kSuiteSeed + 6;
    cfg.h_max = 4;
    cfg.timing = false;
    auto records = run_sweep(cfg);  // count_family already enforces scaled-vs-direct agreement
    if (records.size() != 20) {
        detail = "expected 20 records, got " + std::to_string(records.size());
        return false;
    }
    std::size_t applicable = 0;
    for (const auto& r : records)
        if (r[ExperimentRecord::kApplicable] == "true") ++applicable;
    detail = "20 families, " + std::to_string(applicable) + " with all hypotheses, 0 scaled-vs-direct mismatches";
    return !any_violation(records) && applicable >= 10;
}

// --- criterion 7: exact comparisons vs 50-digit decimals --------------------

bool criterion_exactness(std::string& detail) {
    SplitMix64 rng(kSuiteSeed + 7);
    std::size_t decisions = 0;
    for (int iter = 0; iter < 1000; ++iter) {
        std::uint64_t m = 1 + rng.below(4), n = 1 + rng.below(4), t = 2 + rng.below(1u << 20);
        BoundReport r;
        switch (rng.below(5)) {
            case 0: r = bound_th1(m, n, t, 1000003); break;
            case 1: r = bound_thsr(n, 1 + rng.below(16), t); break;
            case 2: r = bound_energy(n, 2 + static_cast<unsigned>(rng.below(6)), t); break;
            case 3: r = bound_corollaries(m, n, t).second; break;
            default: r = bound_comparators(1, 1, t, 1000003, rng.below(10)).first; break;
        }
        mpz_class scaled = r.num * ipow(10, 50ul * r.root);
        scaled /= r.den;
        mpz_class approx = iroot_floor(scaled, r.root);  // bound * 10^50
        mpz_class base = iroot_floor(r.num / r.den, r.root);
        for (mpz_class count :
             {mpz_class(0), mpz_class(base - 1), base, mpz_class(base + 1), mpz_class(base * 2), mpz_class(base / 2)}) {
            if (count < 0) continue;
            bool exact = r.dominates(count);
            bool decimal = count * ipow(10, 50) <= approx;
            if (exact != decimal) {
                detail = "decision mismatch for " + r.name;
                return false;
            }
            ++decisions;
        }
    }
    detail = std::to_string(decisions) + " straddling decisions across all bound kinds";
    return true;
}

// --- criterion 8: byte-identical reruns -------------------------------------

bool criterion_determinism(std::string& detail) {
    auto run_pair = [](const RunConfig& cfg) {
        auto a = run_sweep(cfg);
        auto b = run_sweep(cfg);
        return records_to_csv(a) == records_to_csv(b);
    };
    RunConfig oracle;
    oracle.mode = "oracle";
    oracle.instances = 25;
    oracle.seed = kSuiteSeed + 8;
    oracle.p_max = 50000;
    oracle.t_max = 100;
    oracle.timing = false;

    RunConfig th1;
    th1.mode = "th1";
    th1.instances = 10;
    th1.seed = kSuiteSeed + 9;
    th1.timing = false;

    RunConfig family;
    family.mode = "family";
    family.instances = 8;
    family.seed = kSuiteSeed + 10;
    family.timing = false;

    RunConfig certify;
    certify.mode = "certify";
    certify.instances = 3;
    certify.seed = kSuiteSeed + 11;
    certify.timing = false;

    if (!run_pair(oracle)) {
        detail = "oracle sweep differed between reruns";
        return false;
    }
    if (!run_pair(th1)) {
        detail = "th1 sweep differed between reruns";
        return false;
    }
    if (!run_pair(family)) {
        detail = "family sweep differed between reruns";
        return false;
    }
    if (!run_pair(certify)) {
        detail = "certify sweep differed between reruns";
        return false;
    }
    // worker count must not matter either
    RunConfig parallel = oracle;
    parallel.workers = 3;
    if (records_to_csv(run_sweep(oracle)) != records_to_csv(run_sweep(parallel))) {
        detail = "worker count changed the records";
        return false;
    }
    detail = "oracle, th1, family and certify sweeps byte-identical across reruns and worker counts";
    return true;
}

}  // namespace

int main() {
    std::printf("cosetbound acceptance suite\n");
    run_criterion({1, "naive and rootfind oracles agree", 60}, criterion_oracle);
    run_criterion({2, "count bound sweep on random lines", 300}, criterion_th1_sweep);
    run_criterion({3, "flagship certificate at t = 1000", 300}, criterion_flagship);
    run_criterion({4, "derivative recursions and degree bounds", 60}, criterion_derivatives);
    run_criterion({5, "energy equals 4-tuple enumeration", 60}, criterion_energy);
    run_criterion({6, "family counts and the average bound", 300}, criterion_family);
    run_criterion({7, "integer-power decisions match 50-digit decimals", 10}, criterion_exactness);
    run_criterion({8, "seeded runs are byte-identical", 300}, criterion_determinism);
    if (failures) {
        std::printf("%d criterion(s) FAILED\n", failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
