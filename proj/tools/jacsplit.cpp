// jacsplit command-line front end.
//
// Exit codes: 0 all checks pass, 1 a verification failed, 2 usage error.
// Errors are printed to stderr as {"error": {"code", "message"}}.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "jacsplit/jacsplit.hpp"

namespace {

using namespace jacsplit;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Options {
    u32 p = 3;
    u32 ell = 7;
    u32 i = 2;
    std::string t;
    u32 r = 3;
    u64 bound = 50;
    std::optional<u64> guard;
    std::string format = "json";
    std::string out;
    unsigned workers = 0;
    std::string curve = "D";
    std::string context = "finite";
    bool skip_ct = false;
};

struct Output {
    json body;
    std::string csv;
    std::string text;
    bool pass = true;
};

void emit_error(const std::string& code, const std::string& message) {
    std::cerr << json{{"error", {{"code", code}, {"message", message}}}}.dump() << "\n";
}

CountConfig make_config(const Options& o) {
    CountConfig cfg = CountConfig::from_env();
    if (o.guard) {
        if (*o.guard < CountConfig::kMinGuard) throw PreconditionError("--guard must be >= 1024", "usage.guard");
        cfg.guard = *o.guard;
    }
    cfg.workers = o.workers;
    return cfg;
}

/// "--t 2,1" is 2 + z: coefficients low to high in F_{p^i}.
FieldElem parse_t(const Options& o) {
    const auto f = make_field(o.p, o.i);
    std::vector<u32> coeffs(o.i, 0);
    std::stringstream ss(o.t);
    std::string item;
    u32 k = 0;
    while (std::getline(ss, item, ',')) {
        if (k >= o.i) throw PreconditionError("--t has more than i coefficients", "usage.t");
        try {
            std::size_t used = 0;
            const long long v = std::stoll(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            coeffs[k++] = static_cast<u32>(((v % o.p) + o.p) % o.p);
        } catch (const std::logic_error&) {
            throw PreconditionError("--t must be comma-separated integers", "usage.t");
        }
    }
    if (k == 0) throw PreconditionError("--t is empty", "usage.t");
    return FieldElem(f, coeffs);
}

std::optional<FieldElem> optional_t(const Options& o) {
    if (o.t.empty()) return std::nullopt;
    return parse_t(o);
}

std::string csv_checks(const std::vector<Check>& checks) {
    std::string s = "name,claim_ref,pass\n";
    for (const auto& c : checks) s += c.name + "," + c.claim_ref + "," + (c.pass ? "true" : "false") + "\n";
    return s;
}

std::string text_checks(const std::vector<Check>& checks, const std::string& conclusion) {
    std::string s;
    for (const auto& c : checks) s += std::string(c.pass ? "PASS " : "FAIL ") + c.name + "\n";
    return s + conclusion + "\n";
}

Output from_checks(json body, const std::vector<Check>& checks, const std::string& conclusion) {
    Output out;
    out.body = std::move(body);
    out.csv = csv_checks(checks);
    out.text = text_checks(checks, conclusion);
    out.pass = all_pass(checks);
    return out;
}

Output cmd_search(const Options& o) {
    if (!is_prime(o.p)) throw PreconditionError("--p must be prime", "usage.p");
    if (o.i < 1) throw PreconditionError("--i must be >= 1", "usage.i");
    if (o.bound < 3) throw PreconditionError("--bound must be >= 3", "usage.bound");
    json rows = json::array();
    std::string csv = "ell,base,order,group_order\n";
    std::string text;
    for (u64 ell : search_ells(o.p, o.i, o.bound)) {
        const auto c = is_generator_quotient(o.p, o.i, ell);
        rows.push_back(json{{"ell", c.ell}, {"base", c.base}, {"order", c.order}, {"group_order", c.group_order}});
        csv += std::to_string(c.ell) + "," + std::to_string(c.base) + "," + std::to_string(c.order) + "," +
               std::to_string(c.group_order) + "\n";
        text += "ell=" + std::to_string(c.ell) + " p^i mod ell=" + std::to_string(c.base) + "\n";
    }
    const std::string conclusion = std::to_string(rows.size()) + " primes ell <= " + std::to_string(o.bound);
    json body = make_envelope(json{{"p", o.p}, {"i", o.i}, {"bound", o.bound}}, {}, conclusion);
    body["results"] = json{{"rows", rows}};
    return Output{body, csv, text + conclusion + "\n", true};
}

Output cmd_decompose(const Options& o) {
    const auto rep = full_decomposition_report(o.p, o.ell, o.i, optional_t(o), make_config(o),
                                               DecompOptions{!o.skip_ct});
    return from_checks(rep.to_json(), rep.checks, rep.conclusion);
}

Output cmd_ordinary(const Options& o) {
    if (o.i <= 1 && o.t.empty()) throw PreconditionError("--t is required when i = 1", "usage.t");
    const FieldElem t0 = o.t.empty() ? find_ordinary_t(o.p, o.ell, o.i) : parse_t(o);
    const auto v = is_ordinary_ct(o.p, o.ell, t0);
    json diag = json::array();
    for (const auto& d : v.matrix.diag) diag.push_back(field_elem_to_json(d));
    std::vector<Check> checks{Check{"phi_implies_ordinary", "cartier.phi_sufficient", !v.phi_nonzero || v.ordinary,
                                    {{"phi_nonzero", v.phi_nonzero}, {"ordinary", v.ordinary}}}};
    const std::string conclusion = std::string("C_t is ") + (v.ordinary ? "ordinary" : "not ordinary");
    json body = make_envelope(json{{"p", o.p}, {"ell", o.ell}, {"i", o.i}, {"t0", field_elem_to_json(t0)}}, checks,
                              conclusion);
    body["results"] = json{{"ordinary", v.ordinary},
                           {"phi_nonzero", v.phi_nonzero},
                           {"phi_value", field_elem_to_json(v.phi_value)},
                           {"permutation", v.matrix.perm},
                           {"diagonal", diag}};
    return from_checks(body, checks, conclusion);
}

Output cmd_zeta(const Options& o) {
    const CountConfig cfg = make_config(o);
    if (o.t.empty()) throw PreconditionError("--t is required", "usage.t");
    const FieldElem t0 = parse_t(o);
    CurveOddChar curve = o.curve == "C" ? c_curve(o.ell, t0) : o.curve == "D" ? d_curve(o.ell, t0) : e_curve(t0);
    const auto z = compute_zeta(curve, cfg, true);
    std::vector<Check> checks{
        Check{"count_prediction", "zeta.prediction", z.prediction_ok, json::object()},
        Check{"functional_equation", "zeta.functional_equation", z.L.satisfies_functional_equation(), json::object()}};
    const u32 pr = p_rank_from_l(z.L, o.p);
    const std::string conclusion = "genus " + std::to_string(curve.genus()) + ", p-rank " + std::to_string(pr);
    json body = make_envelope(json{{"p", o.p}, {"ell", o.ell}, {"i", o.i}, {"curve", o.curve},
                                   {"t0", field_elem_to_json(t0)}},
                              checks, conclusion);
    json l = json::array();
    for (const auto& a : z.L.a) l.push_back(big_to_json(a));
    body["results"] = json{{"counts", z.counts}, {"L", l}, {"charpoly", int_poly_to_json(z.charpoly)},
                           {"genus", curve.genus()}, {"p_rank", pr}};
    Output out = from_checks(body, checks, conclusion);
    out.csv = "m,count\n";
    for (std::size_t m = 0; m < z.counts.size(); ++m)
        out.csv += std::to_string(m + 1) + "," + std::to_string(z.counts[m]) + "\n";
    return out;
}

Output cmd_char2(const Options& o) {
    const auto rep = char2_report(o.r, make_config(o));
    return from_checks(rep.to_json(), rep.checks, rep.conclusion);
}

Output cmd_twist(const Options& o) {
    const CountConfig cfg = make_config(o);
    const auto dec = full_decomposition_report(o.p, o.ell, o.i, optional_t(o), cfg, DecompOptions{false});
    const auto tw = build_twist(o.p, o.ell, dec.t0);
    std::vector<Check> checks{Check{"twist_identity", "twist.identity", twist_identity_holds(tw), json::object()},
                              Check{"witness_point", "twist.witness", witness_point_check(tw), json::object()}};
    json results{{"g", tw.g.to_string("x")}, {"h", tw.h.to_string("x")}};
    std::string conclusion;
    if (dec.pass()) {
        const auto rr = rank_report(dec, o.context == "closure" ? RankContext::algebraic_closure
                                                               : RankContext::finite_field);
        results["rank"] = rr.to_json();
        conclusion = "predicted rank " + std::to_string(rr.predicted_rank) + " (" + rr.status + ")";
    } else {
        checks.push_back(Check{"decomposition", "weil_restriction.base_change", false, json::object()});
        conclusion = "no rank prediction: " + dec.conclusion;
    }
    json body = make_envelope(json{{"p", o.p}, {"ell", o.ell}, {"i", o.i}, {"t0", field_elem_to_json(dec.t0)},
                                   {"context", o.context}},
                              checks, conclusion);
    body["results"] = results;
    return from_checks(body, checks, conclusion);
}

Output cmd_accept(const Options& o) {
    const auto results = acceptance::run_all(make_config(o));
    Output out;
    json arr = json::array();
    out.csv = "id,pass,elapsed_ms,budget_ms\n";
    for (const auto& r : results) {
        arr.push_back(r.to_json());
        out.text += acceptance::format_line(r) + "\n";
        out.csv += r.id + "," + (r.pass ? "true" : "false") + "," + std::to_string(r.elapsed_ms) + "," +
                   std::to_string(r.budget_ms) + "\n";
        out.pass = out.pass && r.pass;
    }
    out.body = json{{"criteria", arr}, {"pass", out.pass}, {"meta", {{"tool", "jacsplit"}, {"schema", 1}}}};
    return out;
}

void write(const Output& out, const Options& o) {
    std::string payload;
    if (o.format == "json") payload = out.body.dump(2) + "\n";
    else if (o.format == "csv") payload = out.csv;
    else payload = out.text;
    if (o.out.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream f(o.out);
    if (!f) throw PreconditionError("cannot open output file " + o.out, "usage.out");
    f << payload;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Verify Jacobian decompositions of hyperelliptic curves over finite fields"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--guard", o.guard, "largest field size to enumerate");
        sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "csv", "text"}));
        sub->add_option("--out", o.out, "write output to a file");
        sub->add_option("--workers", o.workers, "counting threads (0 = all cores)");
    };
    auto pli = [&](CLI::App* sub, bool with_t) {
        sub->add_option("--p", o.p, "odd prime characteristic");
        sub->add_option("--ell", o.ell, "odd prime ell");
        sub->add_option("--i", o.i, "degree of k over F_p");
        if (with_t) sub->add_option("--t", o.t, "t0 as coefficients low to high, e.g. 2,1");
    };

    auto* search = app.add_subcommand("search", "primes ell for which p^i generates (Z/ell)^*/<-1>");
    search->add_option("--p", o.p);
    search->add_option("--i", o.i);
    search->add_option("--bound", o.bound);
    common(search);

    auto* decompose = app.add_subcommand("decompose", "full decomposition report for D_t");
    pli(decompose, true);
    decompose->add_flag("--skip-ct", o.skip_ct, "skip the genus-ell curve C_t");
    common(decompose);

    auto* ordinary = app.add_subcommand("ordinary", "Cartier-matrix ordinarity of C_t");
    pli(ordinary, true);
    common(ordinary);

    auto* zeta = app.add_subcommand("zeta", "point counts and L-polynomial");
    pli(zeta, true);
    zeta->add_option("--curve", o.curve, "C, D or E")->check(CLI::IsMember({"C", "D", "E"}));
    common(zeta);

    auto* char2 = app.add_subcommand("char2", "Artin-Schreier construction in characteristic 2");
    char2->add_option("--r", o.r, "odd prime r");
    common(char2);

    auto* twist = app.add_subcommand("twist", "twist witness and predicted rank");
    pli(twist, true);
    twist->add_option("--context", o.context)->check(CLI::IsMember({"finite", "closure"}));
    common(twist);

    auto* accept = app.add_subcommand("accept", "run the acceptance criteria");
    common(accept);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        emit_error("usage.parse", e.what());
        return kExitUsage;
    }

    try {
        (void)make_config(o);  // validates --guard and JACSPLIT_GUARD for every subcommand
        Output out;
        if (search->parsed()) out = cmd_search(o);
        else if (decompose->parsed()) out = cmd_decompose(o);
        else if (ordinary->parsed()) out = cmd_ordinary(o);
        else if (zeta->parsed()) out = cmd_zeta(o);
        else if (char2->parsed()) out = cmd_char2(o);
        else if (twist->parsed()) out = cmd_twist(o);
        else out = cmd_accept(o);
        write(out, o);
        return out.pass ? kExitPass : kExitFail;
    } catch (const PreconditionError& e) {
        emit_error(e.code(), e.what());
        return kExitUsage;
    } catch (const GuardExceeded& e) {
        emit_error(e.code(), e.what());
        return kExitUsage;
    } catch (const Error& e) {
        emit_error(e.code(), e.what());
        return kExitFail;
    } catch (const std::exception& e) {
        emit_error("internal", e.what());
        return kExitFail;
    }
}
