// Copyright (c) cubereach contributors.
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: cube reachability, reductions between the three
// models, random walks, cut-off scans, cardinality reachability, run
// normalization and the built-in generators.

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "cubereach/analyses.hpp"
#include "cubereach/compile.hpp"
#include "cubereach/dsl.hpp"
#include "cubereach/reach.hpp"
#include "cubereach/textio.hpp"

using namespace cubereach;

namespace {

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitBoundedNo = 2;
constexpr int kExitUsage = 3;
constexpr int kExitInput = 4;
constexpr int kExitResource = 5;

int exit_code(Verdict v) {
    switch (v) {
        case Verdict::Yes: return kExitYes;
        case Verdict::No: return kExitNo;
        case Verdict::BoundedNo: return kExitBoundedNo;
    }
    return kExitInput;
}

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

DslDocument load_document(const std::string& path) {
    ParseResult result = parse_document(read_input(path));
    if (!result.ok()) {
        for (const Diagnostic& d : result.diagnostics)
            std::cerr << path << ": " << to_string(d) << "\n";
        throw DomainError("cannot parse '" + path + "'");
    }
    return std::move(*result.document);
}

const DslModel& need_model(const DslDocument& doc, const std::string& name) {
    const DslModel* m = doc.find_model(name);
    if (!m) throw DomainError("no model named '" + name + "'");
    return *m;
}

const DslCube& need_cube(const DslDocument& doc, const std::string& name) {
    const DslCube* c = doc.find_cube(name);
    if (!c) throw DomainError("no cube named '" + name + "'");
    return *c;
}

SizeRange parse_size_range(const std::string& text) {
    auto dots = text.find("..");
    if (dots == std::string::npos)
        throw DomainError("expected a range of the form a..b");
    SizeRange r;
    r.lo = std::stoull(text.substr(0, dots));
    r.hi = std::stoull(text.substr(dots + 2));
    if (r.hi < r.lo) throw DomainError("empty range '" + text + "'");
    return r;
}

// cube reference with optional pinned states: NAME(+state=count)*
struct CubeRef {
    std::string name;
    std::vector<std::pair<std::string, Count>> pins;
};

CubeRef parse_cube_ref(const std::string& text) {
    CubeRef ref;
    std::size_t plus = text.find('+');
    ref.name = text.substr(0, plus);
    while (plus != std::string::npos) {
        std::size_t next = text.find('+', plus + 1);
        std::string pin = text.substr(plus + 1, next == std::string::npos
                                                    ? std::string::npos
                                                    : next - plus - 1);
        auto eq = pin.find('=');
        if (eq == std::string::npos)
            throw DomainError("expected state=count after '+' in cube reference");
        ref.pins.push_back({pin.substr(0, eq),
                            static_cast<Count>(std::stoull(pin.substr(eq + 1)))});
        plus = next;
    }
    return ref;
}

template <class Model>
Cube apply_pins(Cube cube, const Model& model, const CubeRef& ref) {
    for (const auto& [state, count] : ref.pins) {
        auto q = model.find_state(state);
        if (!q) throw DomainError("unknown state '" + state + "' in cube pin");
        cube = cube.with_bounds(*q, count, UBound::of(count));
    }
    return cube;
}

struct EngineFlags {
    std::size_t cap = 5'000'000;
    unsigned threads = 1;

    ExploreOptions options() const {
        ExploreOptions opt;
        opt.max_configs = cap;
        opt.threads = threads;
        return opt;
    }
    void attach(CLI::App* cmd) {
        cmd->add_option("--cap", cap, "stored-configuration cap");
        cmd->add_option("--threads", threads,
                        "engine threads (0 = hardware concurrency)");
    }
};

template <class Model, class TraceT>
void print_witness(const Model& model, const std::string& name,
                   const std::optional<TraceT>& witness) {
    if (!witness) return;
    std::cout << "WITNESS\n" << emit_trace(model, *witness, name);
}

int run_check_reach(const std::string& file, const std::string& src_text,
                    const std::string& dst_text, const std::string& pop,
                    Count slack_opt, bool slack_set, const EngineFlags& engine) {
    DslDocument doc = load_document(file);
    CubeRef src_ref = parse_cube_ref(src_text);
    CubeRef dst_ref = parse_cube_ref(dst_text);
    const DslCube& src = need_cube(doc, src_ref.name);
    const DslCube& dst = need_cube(doc, dst_ref.name);
    if (src.model_name != dst.model_name)
        throw DomainError("cubes refer to different models");
    const DslModel& model = need_model(doc, src.model_name);
    SizeRange sizes = parse_size_range(pop);
    Count slack = slack_set ? slack_opt : sizes.hi;
    ExploreOptions opt = engine.options();

    Verdict verdict;
    std::string note;
    if (const RbnModel* rbn = model.rbn()) {
        auto report = cube_reach_bounded(
            *rbn, apply_pins(src.bounds, *rbn, src_ref),
            apply_pins(dst.bounds, *rbn, dst_ref), sizes, slack, opt);
        verdict = report.verdict;
        note = report.note;
        std::cout << "VERDICT " << to_string(verdict) << "\n";
        print_witness(*rbn, model.name, report.witness);
    } else if (const AsmsModel* asms = model.asms()) {
        AsmsCube s{apply_pins(src.bounds, *asms, src_ref), *src.reg};
        AsmsCube d{apply_pins(dst.bounds, *asms, dst_ref), *dst.reg};
        auto report = cube_reach_bounded(*asms, s, d, sizes, slack, opt);
        verdict = report.verdict;
        note = report.note;
        std::cout << "VERDICT " << to_string(verdict) << "\n";
        print_witness(*asms, model.name, report.witness);
    } else {
        const IoNetModel* net = model.ionet();
        auto report = cube_reach_bounded(
            *net, apply_pins(src.bounds, *net, src_ref),
            apply_pins(dst.bounds, *net, dst_ref), sizes, slack, opt);
        verdict = report.verdict;
        note = report.note;
        std::cout << "VERDICT " << to_string(verdict) << "\n";
        print_witness(*net, model.name, report.witness);
    }
    if (!note.empty()) std::cout << "NOTE " << note << "\n";
    return exit_code(verdict);
}

std::string unique_name(const DslDocument& doc, std::string base) {
    std::string name = base;
    for (unsigned k = 2; doc.find_model(name) || doc.find_cube(name); ++k)
        name = base + "~" + std::to_string(k);
    return name;
}

int run_reduce(const std::string& kind, const std::string& file,
               const std::string& model_name, const std::string& out_path) {
    DslDocument doc = load_document(file);
    const DslModel& model = need_model(doc, model_name);

    DslDocument out;
    std::string provenance;
    if (kind == "rbn-to-asms") {
        if (!model.rbn()) throw DomainError("'" + model_name + "' is not an rbn");
        RbnToAsmsArtifact art = compile_rbn_to_asms(*model.rbn());
        std::string name = unique_name(doc, model_name + "_asms");
        out.models.push_back({name, {}, art.target});
        for (const DslCube& c : doc.cubes) {
            if (c.model_name != model_name) continue;
            AsmsCube translated = art.embed_cube(c.bounds);
            out.cubes.push_back({unique_name(doc, c.name + "_asms"), name,
                                 {}, translated.bounds, translated.reg});
        }
        provenance = "rbn-to-asms of '" + model_name + "'";
    } else if (kind == "asms-to-rbn") {
        if (!model.asms())
            throw DomainError("'" + model_name + "' is not an asms");
        AsmsToRbnArtifact art = compile_asms_to_rbn(*model.asms());
        std::string name = unique_name(doc, model_name + "_rbn");
        out.models.push_back({name, {}, art.target});
        for (const DslCube& c : doc.cubes) {
            if (c.model_name != model_name) continue;
            Cube translated = art.embed_cube({c.bounds, *c.reg});
            out.cubes.push_back({unique_name(doc, c.name + "_rbn"), name,
                                 {}, translated, std::nullopt});
        }
        provenance = "asms-to-rbn of '" + model_name + "'";
    } else if (kind == "io-to-rbn") {
        if (!model.ionet())
            throw DomainError("'" + model_name + "' is not an ionet");
        IoToRbnArtifact art = compile_io_to_rbn(*model.ionet());
        std::string name = unique_name(doc, model_name + "_rbn");
        out.models.push_back({name, {}, art.target});
        for (const DslCube& c : doc.cubes) {
            if (c.model_name != model_name) continue;
            out.cubes.push_back({unique_name(doc, c.name + "_rbn"), name,
                                 {}, c.bounds, std::nullopt});
        }
        provenance = "io-to-rbn of '" + model_name + "'";
    } else {
        throw DomainError("unknown reduction kind '" + kind + "'");
    }

    std::string text = "// " + provenance + "\n" + emit_document(out);
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
    } else {
        std::ofstream f(out_path);
        if (!f) throw DomainError("cannot write '" + out_path + "'");
        f << text;
    }
    return kExitYes;
}

template <class Model, class Config, class Successors>
int simulate_walk(const Model& model, const std::string& name, Config cfg,
                  std::size_t steps, std::uint64_t seed,
                  Successors&& successors) {
    std::mt19937_64 rng(seed);
    Trace<Config, typename std::decay_t<
                      decltype(successors(cfg)[0])>::first_type>
        trace;
    trace.initial = cfg;
    for (std::size_t i = 0; i < steps; ++i) {
        auto succ = successors(cfg);
        if (succ.empty()) break; // deadlock
        auto& pick = succ[std::uniform_int_distribution<std::size_t>(
            0, succ.size() - 1)(rng)];
        cfg = pick.second;
        trace.steps.push_back({pick.first, pick.second});
    }
    std::cout << emit_trace(model, trace, name);
    if (trace.steps.size() < steps) std::cout << "// deadlocked\n";
    return kExitYes;
}

int run_simulate(const std::string& file, const std::string& model_name,
                 const std::string& from, std::size_t steps,
                 std::uint64_t seed) {
    DslDocument doc = load_document(file);
    const DslModel& model = need_model(doc, model_name);
    if (const RbnModel* rbn = model.rbn())
        return simulate_walk(*rbn, model.name, parse_config(from, *rbn), steps,
                             seed, [&](const MultiSet& c) {
                                 return rbn_labeled_successors(*rbn, c);
                             });
    if (const AsmsModel* asms = model.asms())
        return simulate_walk(*asms, model.name, parse_asms_config(from, *asms),
                             steps, seed, [&](const AsmsConfig& c) {
                                 return asms_labeled_successors(*asms, c);
                             });
    const IoNetModel* net = model.ionet();
    return simulate_walk(*net, model.name, parse_config(from, *net), steps,
                         seed, [&](const MultiSet& c) {
                             return io_labeled_successors(*net, c);
                         });
}

int run_cutoff(const std::string& file, const std::string& model_name,
               const std::string& init, const std::string& target,
               const std::string& range, std::size_t window,
               const std::string& reg, const EngineFlags& engine) {
    DslDocument doc = load_document(file);
    const DslModel& model = need_model(doc, model_name);
    SizeRange ks = parse_size_range(range);
    ExploreOptions opt = engine.options();

    CutoffReport report;
    if (const RbnModel* rbn = model.rbn()) {
        auto qi = rbn->find_state(init);
        auto qf = rbn->find_state(target);
        if (!qi || !qf) throw DomainError("unknown state");
        report = cutoff_scan(*rbn, *qi, *qf, ks.lo, ks.hi, window, opt);
    } else if (const AsmsModel* asms = model.asms()) {
        auto qi = asms->find_state(init);
        auto qf = asms->find_state(target);
        auto d = asms->find_letter(reg);
        if (!qi || !qf) throw DomainError("unknown state");
        if (!d)
            throw DomainError(
                "shared-memory scans need --register with a valid letter");
        report = cutoff_scan(*asms, *qi, *qf, ks.lo, ks.hi, window, *d, opt);
    } else {
        throw DomainError("cut-off scans cover rbn and asms models");
    }

    for (const CutoffEntry& e : report.entries) {
        std::cout << "K " << e.k << " ";
        if (e.almost_sure)
            std::cout << (*e.almost_sure ? "yes" : "no") << "\n";
        else
            std::cout << "error " << e.error << "\n";
    }
    if (report.stabilization_k)
        std::cout << "STABILIZATION k=" << *report.stabilization_k
                  << " polarity="
                  << (*report.polarity ? "positive" : "negative")
                  << " (empirical, window=" << report.window << ")\n";
    else
        std::cout << "STABILIZATION none (window=" << report.window << ")\n";
    return report.stabilization_k ? kExitYes : kExitBoundedNo;
}

int run_crp(const std::string& file, const std::string& model_name,
            const std::string& support_text, const std::string& dst_name,
            const std::string& variant_text, Count k_max,
            const EngineFlags& engine) {
    DslDocument doc = load_document(file);
    const DslModel& model = need_model(doc, model_name);
    const DslCube& dst = need_cube(doc, dst_name);
    if (dst.model_name != model_name)
        throw DomainError("destination cube belongs to a different model");

    CrpVariant variant;
    if (variant_text == "ge1")
        variant = CrpVariant::GeqOne;
    else if (variant_text == "ge1eq0")
        variant = CrpVariant::GeqOneEqZero;
    else if (variant_text == "general")
        variant = CrpVariant::General;
    else
        throw DomainError("variant must be ge1, ge1eq0 or general");

    auto parse_support = [&](auto const& m) {
        std::vector<StateId> support;
        std::stringstream ss(support_text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (item.empty()) continue;
            auto q = m.find_state(item);
            if (!q) throw DomainError("unknown state '" + item + "'");
            support.push_back(*q);
        }
        return support;
    };

    ExploreOptions opt = engine.options();
    if (const RbnModel* rbn = model.rbn()) {
        auto report = crp_check(*rbn, parse_support(*rbn), dst.bounds, variant,
                                k_max, opt);
        std::cout << "VERDICT " << to_string(report.verdict) << "\n";
        if (!report.note.empty()) std::cout << "NOTE " << report.note << "\n";
        print_witness(*rbn, model.name, report.witness);
        return exit_code(report.verdict);
    }
    if (const IoNetModel* net = model.ionet()) {
        auto report = crp_check(*net, parse_support(*net), dst.bounds, variant,
                                k_max, opt);
        std::cout << "VERDICT " << to_string(report.verdict) << "\n";
        if (!report.note.empty()) std::cout << "NOTE " << report.note << "\n";
        print_witness(*net, model.name, report.witness);
        return exit_code(report.verdict);
    }
    throw DomainError("cardinality reachability covers rbn and ionet models");
}

int run_normalize(const std::string& file, const std::string& model_name,
                  const std::string& trace_path) {
    DslDocument doc = load_document(file);
    const DslModel& model = need_model(doc, model_name);
    if (!model.rbn())
        throw DomainError("run normalization applies to rbn models");
    RbnToAsmsArtifact art = compile_rbn_to_asms(*model.rbn());

    std::string trace_text = read_input(trace_path);
    AsmsTrace trace = parse_trace(trace_text, art.target);
    AsmsTrace normal = normalize_asms_run(art, trace);
    RbnTrace decoded = decode_run(art, normal);

    std::cout << "NORMALIZED\n"
              << emit_trace(art.target, normal, model_name + "_asms");
    std::cout << "DECODED\n" << emit_trace(*model.rbn(), decoded, model_name);
    return kExitYes;
}

int run_generate(const std::string& what, std::size_t n) {
    DslDocument doc;
    if (what == "counter") {
        CounterFamily fam = gen_counter_rbn(n);
        doc.models.push_back({"counter", {}, std::move(fam.model)});
        doc.cubes.push_back({"C0", "counter", {}, std::move(fam.c0),
                             std::nullopt});
        doc.cubes.push_back({"Cf", "counter", {}, std::move(fam.cf),
                             std::nullopt});
    } else if (what == "choice") {
        ChoiceAsms ex = gen_choice_asms();
        LetterId src_reg = ex.c.reg, dst_reg = ex.c_prime.reg;
        doc.models.push_back({"choice", {}, std::move(ex.model)});
        doc.cubes.push_back({"C", "choice", {}, std::move(ex.c.bounds),
                             src_reg});
        doc.cubes.push_back({"Cp", "choice", {}, std::move(ex.c_prime.bounds),
                             dst_reg});
    } else {
        throw DomainError("unknown generator '" + what + "'");
    }
    std::cout << emit_document(doc);
    return kExitYes;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"cube reachability toolkit for broadcast, shared-memory and "
                 "observation protocols"};
    app.require_subcommand(1);

    EngineFlags engine;

    // check reach
    auto* check = app.add_subcommand("check", "decision procedures");
    check->require_subcommand(1);
    auto* reach = check->add_subcommand(
        "reach", "cube-to-cube reachability within population bounds");
    std::string reach_file, reach_src, reach_dst, reach_pop = "0..8";
    Count reach_slack = 0;
    reach->add_option("file", reach_file, "model file ('-' for stdin)")
        ->required();
    reach->add_option("--src", reach_src, "source cube (NAME[+state=count]...)")
        ->required();
    reach->add_option("--dst", reach_dst, "target cube")->required();
    reach->add_option("--pop", reach_pop, "population range a..b");
    auto* slack_opt = reach->add_option(
        "--slack", reach_slack, "cap for unbounded components (default: pop max)");
    engine.attach(reach);

    // reduce
    auto* reduce = app.add_subcommand("reduce", "compile one model into another");
    std::string reduce_kind, reduce_file, reduce_model, reduce_out;
    reduce->add_option("kind", reduce_kind, "rbn-to-asms | asms-to-rbn | io-to-rbn")
        ->required();
    reduce->add_option("file", reduce_file, "model file")->required();
    reduce->add_option("--model", reduce_model, "model to compile")->required();
    reduce->add_option("-o,--out", reduce_out, "output file (default stdout)");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "seeded random walk");
    std::string sim_file, sim_model, sim_from;
    std::size_t sim_steps = 10;
    std::uint64_t sim_seed = 0;
    simulate->add_option("file", sim_file, "model file")->required();
    simulate->add_option("--model", sim_model, "model name")->required();
    simulate->add_option("--from", sim_from, "initial configuration literal")
        ->required();
    simulate->add_option("--steps", sim_steps, "walk length");
    simulate->add_option("--seed", sim_seed, "random seed");

    // cutoff
    auto* cutoff = app.add_subcommand(
        "cutoff", "almost-sure coverability scan over populations");
    std::string cut_file, cut_model, cut_init, cut_target, cut_range = "1..4",
                                                           cut_reg;
    std::size_t cut_window = 2;
    cutoff->add_option("file", cut_file, "model file")->required();
    cutoff->add_option("--model", cut_model, "model name")->required();
    cutoff->add_option("--init", cut_init, "initial state")->required();
    cutoff->add_option("--target", cut_target, "state to cover")->required();
    cutoff->add_option("--range", cut_range, "population range a..b");
    cutoff->add_option("--window", cut_window, "agreement window");
    cutoff->add_option("--register", cut_reg, "initial register (asms)");
    engine.attach(cutoff);

    // crp
    auto* crp = app.add_subcommand(
        "crp", "cardinality reachability from an unconstrained support");
    std::string crp_file, crp_model, crp_support, crp_dst, crp_variant = "ge1";
    Count crp_kmax = 8;
    crp->add_option("file", crp_file, "model file")->required();
    crp->add_option("--model", crp_model, "model name")->required();
    crp->add_option("--src-support", crp_support,
                    "comma-separated initial states")
        ->required();
    crp->add_option("--dst", crp_dst, "destination cube name")->required();
    crp->add_option("--variant", crp_variant, "ge1 | ge1eq0 | general");
    crp->add_option("--kmax", crp_kmax, "largest source population tried");
    engine.attach(crp);

    // normalize-run
    auto* normalize = app.add_subcommand(
        "normalize-run", "rewrite a compiled run into pseudo-steps and decode");
    std::string norm_file, norm_model, norm_trace;
    normalize->add_option("file", norm_file, "model file")->required();
    normalize->add_option("--model", norm_model, "source rbn model")->required();
    normalize->add_option("--trace", norm_trace, "run file over the compiled model")
        ->required();

    // generate
    auto* generate = app.add_subcommand("generate", "built-in example models");
    std::string gen_what;
    std::size_t gen_n = 3;
    generate->add_option("what", gen_what, "counter | choice")->required();
    generate->add_option("-n", gen_n, "number of counter stages");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (reach->parsed())
            return run_check_reach(reach_file, reach_src, reach_dst, reach_pop,
                                   reach_slack, slack_opt->count() > 0, engine);
        if (reduce->parsed())
            return run_reduce(reduce_kind, reduce_file, reduce_model,
                              reduce_out);
        if (simulate->parsed())
            return run_simulate(sim_file, sim_model, sim_from, sim_steps,
                                sim_seed);
        if (cutoff->parsed())
            return run_cutoff(cut_file, cut_model, cut_init, cut_target,
                              cut_range, cut_window, cut_reg, engine);
        if (crp->parsed())
            return run_crp(crp_file, crp_model, crp_support, crp_dst,
                           crp_variant, crp_kmax, engine);
        if (normalize->parsed())
            return run_normalize(norm_file, norm_model, norm_trace);
        if (generate->parsed()) return run_generate(gen_what, gen_n);
    } catch (const ResourceLimitError& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return kExitResource;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitUsage;
}
