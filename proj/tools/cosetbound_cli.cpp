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

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "cosetbound/cosetbound.hpp"

using namespace cosetbound;

namespace {

struct CliState {
    RunConfig cfg;
    std::string out_path;
    std::string format = "csv";
    std::string cert_out;
    std::string cert_in;
    std::string q_list;
    std::string ls_list;
    bool no_timing = false;
};

void add_common(CLI::App* sub, CliState& st) {
    sub->set_help_flag("--help", "print help");  // frees -h so --h can name the family size
    sub->add_option("--seed", st.cfg.seed, "RNG seed (drives every random choice)");
    sub->add_option("--out", st.out_path, "output path (stdout when omitted)");
    sub->add_option("--format", st.format, "csv|structured")->check(CLI::IsMember({"csv", "structured"}));
    sub->add_flag("--no-timing", st.no_timing, "leave wall_ms empty for byte-reproducible output");
    sub->add_option("--workers", st.cfg.workers, "worker threads for sweeps");
}

std::vector<unsigned> parse_q_list(const std::string& text) {
    std::vector<unsigned> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) out.push_back(static_cast<unsigned>(std::stoul(tok)));
    return out;
}

std::vector<std::uint64_t> parse_u64_list(const std::string& text) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) out.push_back(std::stoull(tok));
    return out;
}

int emit(const std::vector<ExperimentRecord>& records, const CliState& st) {
    std::string text = st.format == "csv" ? records_to_csv(records) : records_to_json(records);
    if (st.out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(st.out_path, std::ios::binary);
        if (!out) {
            std::cerr << "cannot open output path: " << st.out_path << "\n";
            return 2;
        }
        out << text;
    }
    if (any_violation(records)) {
        std::cerr << "BOUND VIOLATION: some applicable bound failed against an exact count\n";
        return 1;
    }
    return 0;
}

int cmd_verify(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "cannot open certificate: " << path << "\n";
        return 2;
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    StepanovCertificate cert = certificate_from_text(buffer.str());

    FieldCtx ctx(cert.p);
    Subgroup g = subgroup_of_order(ctx, static_cast<std::uint32_t>(cert.params.t));
    BiPoly poly = parse_poly(cert.poly_text, ctx);
    std::vector<std::pair<Coset, Coset>> pairs;
    for (const auto& [g1, g2] : cert.pairs) pairs.emplace_back(make_coset(g1, g), make_coset(g2, g));

    bool ok = true;
    auto report = [&](const std::string& name, bool pass) {
        std::cout << (pass ? "PASS " : "FAIL ") << name << "\n";
        ok = ok && pass;
    };

    report("params match choose_params",
           [&] {
               try {
                   StepanovParams expect = choose_params(cert.params.m, cert.params.n, cert.params.t, cert.params.h);
                   return expect.A == cert.params.A && expect.B == cert.params.B && expect.C == cert.params.C &&
                          expect.D == cert.params.D;
               } catch (const Error&) {
                   return false;
               }
           }());
    report("lambda is nonzero", !cert.lambda.empty());
    report("nAB <= t", static_cast<std::uint64_t>(cert.params.n) * cert.params.A * cert.params.B <= cert.params.t);
    report("P(0,0) != 0", poly.coeff(0, 0) != 0);
    report("deg P(x,0) >= 1", poly.specialize_y(0).degree() >= 1);
    report("psi_degree consistent", cert.psi_degree == cert.params.psi_degree());
    std::uint64_t raw = cert.psi_degree * (static_cast<std::uint64_t>(cert.params.m) + cert.params.n) / cert.params.D;
    report("raw_bound consistent", raw == cert.raw_bound);
    report("bound = raw_bound + corrections", cert.bound == cert.raw_bound + cert.corrections);

    std::uint64_t total = 0;
    std::vector<std::vector<std::pair<Elt, Elt>>> sols;
    for (const auto& [a, b] : pairs) {
        SolutionSet s = count_solutions(poly, a, b, CountMethod::rootfind);
        total += s.count();
        sols.push_back(s.points);
    }
    std::cout << "exact count: " << total << ", certified bound: " << cert.bound << "\n";
    report("bound >= exact count", cert.bound >= total);
    report("point vanishing verified", verify_certificate(cert, poly, pairs, sols));

    std::cout << (ok ? "certificate OK" : "certificate REJECTED") << "\n";
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact coset-restricted solution counting, certified bounds and energy sweeps over F_p"};
    app.set_help_flag("--help", "print help");
    app.set_config("--config", "", "flat key=value config file; flags override file values");
    app.require_subcommand(1);
    CliState st;

    CLI::App* count = app.add_subcommand("count", "count solutions of P(x,y) = 0 on a coset pair");
    count->add_option("--p", st.cfg.p, "prime modulus")->required();
    count->add_option("--t", st.cfg.t, "subgroup order (divides p-1)");
    count->add_flag("--t-all", st.cfg.t_all, "sweep every divisor of p-1 in [--t-min, --t-max]");
    count->add_option("--t-min", st.cfg.t_min, "smallest t for --t-all");
    count->add_option("--t-max", st.cfg.t_max, "largest t for --t-all");
    count->add_option("--poly", st.cfg.poly, "polynomial text, e.g. \"x - y + 1\"")->required();
    count->add_option("--g1", st.cfg.g1, "representative of the x coset");
    count->add_option("--g2", st.cfg.g2, "representative of the y coset");
    count->add_option("--method", st.cfg.method, "naive|rootfind|both");
    count->add_flag("--certify", st.cfg.certify, "attach a certificate bound");
    count->add_option("--chi", st.cfg.chi, "Euler characteristic for the Corvaja-Zannier comparator")
        ->each([&](const std::string&) { st.cfg.has_chi = true; });
    add_common(count, st);

    CLI::App* energy = app.add_subcommand("energy", "polynomial energy E_P^q and composed-image energy");
    energy->add_option("--p", st.cfg.p, "prime modulus")->required();
    energy->add_option("--t", st.cfg.t, "subgroup order")->required();
    energy->add_option("--poly", st.cfg.poly, "bivariate polynomial");
    energy->add_option("--q", st.q_list, "comma-separated exponents, e.g. 2,3,4");
    energy->add_option("--f", st.cfg.fpoly, "univariate f for E(f(G), g(G))");
    energy->add_option("--g", st.cfg.gpoly, "univariate g for E(f(G), g(G))");
    add_common(energy, st);

    CLI::App* family = app.add_subcommand("family", "count an equation family P = l_i over G");
    family->add_option("--p", st.cfg.p, "prime modulus")->required();
    family->add_option("--t", st.cfg.t, "subgroup order")->required();
    family->add_option("--poly", st.cfg.poly, "homogeneous polynomial")->required();
    family->add_option("--gamma", st.cfg.gamma, "base right-hand side");
    family->add_option("--ls", st.ls_list, "comma-separated l_i (random when omitted)");
    family->add_option("--h", st.cfg.h, "family size for random l_i");
    family->add_option("--method", st.cfg.method, "naive|rootfind");
    family->add_flag("--certify", st.cfg.certify, "attach a family certificate bound");
    add_common(family, st);

    CLI::App* certify = app.add_subcommand("certify", "construct and verify a certificate for one instance");
    certify->add_option("--p", st.cfg.p, "prime modulus")->required();
    certify->add_option("--t", st.cfg.t, "subgroup order")->required();
    certify->add_option("--poly", st.cfg.poly, "polynomial text")->required();
    certify->add_option("--g1", st.cfg.g1, "representative of the x coset");
    certify->add_option("--g2", st.cfg.g2, "representative of the y coset");
    certify->add_option("--out-cert", st.cert_out, "write the full certificate document here");
    add_common(certify, st);

    CLI::App* sweep = app.add_subcommand("sweep", "seeded instance sweeps with bound tripwires");
    sweep->add_option("--mode", st.cfg.mode, "oracle|th1|family|energy|certify")->required();
    sweep->add_option("--instances", st.cfg.instances, "number of instances")->required();
    sweep->add_option("--p-min", st.cfg.p_min, "smallest prime to draw");
    sweep->add_option("--p-max", st.cfg.p_max, "largest prime to draw");
    sweep->add_option("--t-min", st.cfg.t_min, "smallest subgroup order");
    sweep->add_option("--t-max", st.cfg.t_max, "largest subgroup order");
    sweep->add_option("--deg-max", st.cfg.deg_max, "max bidegree for random polynomials");
    sweep->add_option("--h-max", st.cfg.h_max, "max family size");
    sweep->add_option("--q", st.q_list, "comma-separated energy exponents");
    sweep->add_option("--method", st.cfg.method, "counting method where applicable");
    sweep->add_flag("--certify", st.cfg.certify, "attach certificates where supported");
    add_common(sweep, st);

    CLI::App* verify = app.add_subcommand("verify", "re-check a serialized certificate");
    verify->set_help_flag("--help", "print help");
    verify->add_option("--cert", st.cert_in, "certificate document path")->required();

    CLI11_PARSE(app, argc, argv);
    st.cfg.timing = !st.no_timing;
    if (!st.q_list.empty()) st.cfg.qs = parse_q_list(st.q_list);
    if (!st.ls_list.empty()) st.cfg.ls = parse_u64_list(st.ls_list);

    try {
        if (app.got_subcommand(count)) return emit(run_count(st.cfg), st);
        if (app.got_subcommand(energy)) return emit(run_energy(st.cfg), st);
        if (app.got_subcommand(family)) return emit(run_family(st.cfg), st);
        if (app.got_subcommand(certify)) {
            FieldCtx ctx(static_cast<std::uint32_t>(st.cfg.p));
            if (!st.cert_out.empty()) {
                Subgroup g = subgroup_of_order(ctx, static_cast<std::uint32_t>(st.cfg.t));
                Coset c1 = make_coset(static_cast<Elt>(st.cfg.g1 % st.cfg.p), g);
                Coset c2 = make_coset(static_cast<Elt>(st.cfg.g2 % st.cfg.p), g);
                BiPoly poly = parse_poly(st.cfg.poly, ctx);
                StepanovCertificate cert = construct_certificate(poly, c1, c2);
                SolutionSet sols = count_solutions(poly, c1, c2, CountMethod::rootfind, st.cfg.seed);
                cert.checks.point_vanishing_verified = verify_certificate(cert, poly, c1, c2, sols.points);
                std::ofstream out(st.cert_out, std::ios::binary);
                if (!out) {
                    std::cerr << "cannot open certificate output path: " << st.cert_out << "\n";
                    return 2;
                }
                out << certificate_to_text(cert);
            }
            return emit(run_certify(st.cfg), st);
        }
        if (app.got_subcommand(sweep)) return emit(run_sweep(st.cfg), st);
        if (app.got_subcommand(verify)) return cmd_verify(st.cert_in);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
