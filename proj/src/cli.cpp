#include "beliefrev/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "beliefrev/alternatives.hpp"
#include "beliefrev/io.hpp"

namespace beliefrev::cli {

namespace {

using io::Json;

struct Options {
    // shared
    double tolerance = kDefaultTolerance;
    bool exact = false;
    std::uint64_t seed = 1;
    std::string output = "json";
    std::string frame;

    // documents
    std::string m1, m2, m3, partition, model;

    std::string event;
    std::string rule;
    std::string mode;  // empty: strict, or least-commitment for --search
    std::string constraints = "C1,C3F,C3R";
    std::string rules = "jeffrey-geometric,jeffrey-dempster,shafer,dubois-prade,it1,it2,it3";
    std::string op = "bel";
    bool search = false;
    std::size_t trials = 1000;

    // gen
    std::size_t n = 4;
    std::size_t max_atoms = 0;
    std::size_t m1_focal = 4;
    std::size_t m2_focal = 3;
    unsigned weight_max = 9;
    bool bayesian = false;
    std::string kind = "instance";
    std::string out_dir;
};

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string item;
    while (std::getline(in, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

std::string read_file(const std::string& path, const std::string& flag) {
    if (path.empty()) throw InvalidInput(flag + " is required");
    std::ifstream in(path);
    if (!in) throw InvalidInput(flag + ": cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Json load(const std::string& path, const std::string& flag) {
    return io::parse_document(read_file(path, flag), flag + " (" + path + ")");
}

FallbackPolicy parse_mode(const std::string& mode, FallbackPolicy fallback = FallbackPolicy::strict) {
    if (mode.empty()) return fallback;
    if (mode == "strict") return FallbackPolicy::strict;
    if (mode == "least-commitment") return FallbackPolicy::least_commitment;
    throw InvalidInput("--mode must be strict or least-commitment, got '" + mode + "'");
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

template <class S>
class Runner {
public:
    Runner(const Options& opts, std::ostream& out) : opts_(opts), out_(out), table_(opts.output == "table") {
        if (!opts.frame.empty()) {
            if (std::filesystem::is_regular_file(opts.frame))
                frame_ = io::frame_from_json(load(opts.frame, "--frame"), "--frame");
            else
                frame_ = Frame(split_list(opts.frame));
        }
        check_.tolerance = opts.tolerance;
        check_.seed = opts.seed;
    }

    int bel() {
        const auto m = mass("--m1", opts_.m1);
        const auto b = belief(m);
        const auto p = plausibility(m);
        if (table_) {
            out_ << "set\tmass\tbel\tpl\n";
            for (Mask a = 0; a < b.values().size(); ++a)
                out_ << m.frame().format(a) << "\t" << format_scalar(m.mass(a)) << "\t" << format_scalar(b[a]) << "\t"
                     << format_scalar(p[a]) << "\n";
            return kExitOk;
        }
        Json rows = Json::array();
        for (Mask a = 0; a < b.values().size(); ++a)
            rows.push_back(Json{{"set", io::set_to_json(m.frame(), a)},
                                {"mass", format_scalar(m.mass(a))},
                                {"bel", format_scalar(b[a])},
                                {"pl", format_scalar(p[a])}});
        emit(out_, Json{{"frame", io::to_json(m.frame())}, {"rows", rows}});
        return kExitOk;
    }

    int condition() {
        const auto m = mass("--m1", opts_.m1);
        const Mask event = io::parse_set_text(m.frame(), opts_.event);
        MassFunction<S> result = [&] {
            if (opts_.rule == "dempster") return condition_dempster(m, event, opts_.tolerance);
            if (opts_.rule == "dempster-unnorm") return condition_unnormalized(m, event, opts_.tolerance);
            if (opts_.rule == "geometric") return condition_geometric(m, event, opts_.tolerance);
            throw InvalidInput("--rule must be dempster, dempster-unnorm or geometric, got '" + opts_.rule + "'");
        }();
        write_mass(result);
        return kExitOk;
    }

    int jeffrey() {
        const auto partition = load_partition();
        const auto m1 = mass("--m1", opts_.m1);
        const auto m2 = mass("--m2", opts_.m2);
        const auto policy = parse_mode(opts_.mode);
        JeffreyResult<S> r = [&] {
            if (opts_.rule == "geometric") return jeffrey_geometric(m1, partition, m2, policy, opts_.tolerance);
            if (opts_.rule == "dempster") return jeffrey_dempster(m1, partition, m2, policy, opts_.tolerance);
            throw InvalidInput("--rule must be geometric or dempster, got '" + opts_.rule + "'");
        }();
        if (table_) {
            io::write_table(out_, r.mass);
            for (const auto& e : r.fallbacks)
                out_ << "fallback: class of " << m1.frame().format(e.block) << " has zero weight; "
                     << format_scalar(e.orphaned_mass) << (e.reassigned ? " reassigned to the block" : " dropped")
                     << (e.zero_plausibility ? " (pl1 = 0)" : "") << "\n";
            return kExitOk;
        }
        Json j = io::to_json(r.mass);
        j["fallbacks"] = io::to_json(r.fallbacks, m1.frame());
        emit(out_, j);
        return kExitOk;
    }

    int check() {
        const auto partition = load_partition();
        std::vector<ConstraintReport<S>> reports;
        bool did_c3f = false;
        bool did_c3r = false;
        for (const auto& c : split_list(opts_.constraints)) {
            if (c == "C1") {
                reports.push_back(check_C1(mass("--m3", opts_.m3), mass("--m2", opts_.m2), partition, check_));
            } else if (c == "C2F" || c == "C3F") {
                if (did_c3f) continue;
                did_c3f = true;
                reports.push_back(check_C2F_C3F(mass("--m1", opts_.m1), mass("--m3", opts_.m3), partition, check_));
            } else if (c == "C2R" || c == "C3R") {
                if (did_c3r) continue;
                did_c3r = true;
                reports.push_back(check_C2R_C3R(mass("--m1", opts_.m1), mass("--m3", opts_.m3), partition, check_));
            } else if (c == "R1R2" || c == "R1" || c == "R2") {
                const auto m2 = mass("--m2", opts_.m2);
                reports.push_back(check_R1_R2(mass("--m1", opts_.m1), mass("--m3", opts_.m3), partition,
                                              atom_probabilities(m2, partition), check_));
            } else if (c == "shafer") {
                reports.push_back(check_shafer_property(mass("--m1", opts_.m1), mass("--m2", opts_.m2), partition,
                                                        check_));
            } else {
                throw InvalidInput("--constraints: unknown constraint '" + c +
                                   "' (expected C1, C2F, C3F, C2R, C3R, R1R2 or shafer)");
            }
        }
        bool all_pass = true;
        for (const auto& r : reports) all_pass = all_pass && r.pass;
        if (table_) {
            for (const auto& r : reports) io::write_table(out_, r, partition.frame());
        } else {
            Json list = Json::array();
            for (const auto& r : reports) list.push_back(io::to_json(r, partition.frame()));
            emit(out_, Json{{"pass", all_pass}, {"reports", list}});
        }
        return all_pass ? kExitOk : kExitConstraintFailure;
    }

    int compare() {
        std::vector<RevisionRule> rules;
        for (const auto& r : split_list(opts_.rules)) rules.push_back(parse_rule(r));
        if (opts_.search) return search(rules);

        const auto partition = load_partition();
        const auto m1 = mass("--m1", opts_.m1);
        const auto m2 = mass("--m2", opts_.m2);
        const auto policy = parse_mode(opts_.mode);
        const Frame& frame = partition.frame();

        bool all_c1 = true;
        Json rows = Json::array();
        std::optional<SetFunction<S>> dubois_prade, it1;
        for (RevisionRule rule : rules) {
            Json row{{"rule", rule_name(rule)}};
            try {
                const auto outcome = apply_rule(rule, m1, partition, m2, policy, opts_.tolerance);
                const auto c1 = check_C1(outcome.belief, m2, partition, check_);
                all_c1 = all_c1 && c1.pass;
                row["belief_function"] = outcome.is_belief_function;
                row["C1"] = io::to_json(c1, frame);
                std::optional<MassFunction<S>> m3 = outcome.mass;
                if (!m3 && outcome.is_belief_function) m3 = mass_from_belief(outcome.belief, opts_.tolerance);
                if (m3) {
                    row["C2F+C3F"] = io::to_json(check_C2F_C3F(m1, *m3, partition, check_), frame);
                    row["C2R+C3R"] = io::to_json(check_C2R_C3R(m1, *m3, partition, check_), frame);
                }
                row["belief"] = io::to_json(outcome.belief, "bel")["values"];
                if (rule == RevisionRule::dubois_prade) dubois_prade = outcome.belief;
                if (rule == RevisionRule::it1) it1 = outcome.belief;
            } catch (const Error& e) {
                row["error"] = e.what();
                all_c1 = false;
            }
            rows.push_back(std::move(row));
        }

        Json notes = Json::array();
        notes.push_back(std::string("rival rules read p1(B) as ") + std::string(kRivalNormalizer));
        if (dubois_prade && it1 && !approx_equal(*dubois_prade, *it1, opts_.tolerance))
            notes.push_back(
                "dubois-prade divides the already normalized bel1(A|B) by pl1(B) again, so it differs from it1 "
                "wherever pl1(B) < 1 for a focal B of m2");

        if (table_) {
            out_ << "rule\tC1\tC2F+C3F\tC2R+C3R\tbelief function\n";
            for (const auto& row : rows) {
                out_ << row["rule"].get<std::string>() << "\t";
                if (row.contains("error")) {
                    out_ << "error: " << row["error"].get<std::string>() << "\n";
                    continue;
                }
                auto verdict = [&](const char* key) -> std::string {
                    if (!row.contains(key)) return "n/a";
                    return row[key]["pass"].get<bool>() ? "pass" : "FAIL";
                };
                out_ << verdict("C1") << "\t" << verdict("C2F+C3F") << "\t" << verdict("C2R+C3R") << "\t"
                     << (row["belief_function"].get<bool>() ? "yes" : "no") << "\n";
            }
            for (const auto& n : notes) out_ << "note: " << n.get<std::string>() << "\n";
        } else {
            emit(out_, Json{{"frame", io::to_json(frame)}, {"mode", to_string(policy)}, {"rules", rows}, {"notes", notes}});
        }
        return all_c1 ? kExitOk : kExitConstraintFailure;
    }

    int provability() {
        const auto model = io::model_from_json<S>(load(opts_.model, "--model"), frame_, "--model", opts_.tolerance);
        const Frame& frame = model.frame();
        if (opts_.op == "bel") {
            const auto m = induced_bba(model, opts_.tolerance);
            Json rows = Json::array();
            for (Mask l = 0; l <= frame.full(); ++l)
                rows.push_back(Json{{"set", io::set_to_json(frame, l)},
                                    {"provability", format_scalar(provability_probability(model, l))}});
            emit(out_, Json{{"induced_bba", io::to_json(m)}, {"provability", rows}});
            return kExitOk;
        }
        if (opts_.op == "data-condition") {
            const auto conditioned = data_condition_model(model, io::parse_set_text(frame, opts_.event), opts_.tolerance);
            emit(out_, Json{{"model", io::to_json(conditioned)},
                            {"induced_bba", io::to_json(induced_bba(conditioned, opts_.tolerance))}});
            return kExitOk;
        }
        if (opts_.op == "source-condition") {
            const auto f = source_condition(model, io::parse_set_text(frame, opts_.event), opts_.tolerance);
            emit(out_, io::to_json(f, "bel"));
            return kExitOk;
        }
        if (opts_.op == "collapse") {
            emit(out_, Json{{"probabilistic_collapse", is_probabilistic_collapse(model)},
                            {"additive_belief", induced_belief_is_additive(model, opts_.tolerance)}});
            return kExitOk;
        }
        throw InvalidInput("--op must be bel, data-condition, source-condition or collapse, got '" + opts_.op + "'");
    }

    int gen() {
        Rng rng(opts_.seed);
        const Frame frame = letter_frame(opts_.n);
        if (opts_.kind == "model") {
            emit(out_, io::to_json(random_model<S>(frame, rng, opts_.m1_focal, opts_.weight_max, opts_.bayesian)));
            return kExitOk;
        }
        if (opts_.kind != "instance") throw InvalidInput("--kind must be instance or model, got '" + opts_.kind + "'");

        const Partition partition = random_partition(frame, rng, opts_.max_atoms);
        const auto m1 = opts_.bayesian ? random_bayesian<S>(frame, rng, opts_.weight_max)
                                       : random_mass<S>(frame, rng, opts_.m1_focal, opts_.weight_max);
        const auto m2 = opts_.bayesian ? random_on_atoms<S>(partition, rng, opts_.weight_max)
                                       : random_on_subalgebra<S>(partition, rng, opts_.m2_focal, opts_.weight_max);
        if (!opts_.out_dir.empty()) {
            std::filesystem::create_directories(opts_.out_dir);
            const std::filesystem::path dir(opts_.out_dir);
            std::ofstream(dir / "partition.json") << io::to_json(partition).dump(2) << "\n";
            std::ofstream(dir / "m1.json") << io::to_json(m1).dump(2) << "\n";
            std::ofstream(dir / "m2.json") << io::to_json(m2).dump(2) << "\n";
        }
        emit(out_, Json{{"seed", opts_.seed},
                        {"partition", io::to_json(partition)},
                        {"m1", io::to_json(m1)},
                        {"m2", io::to_json(m2)}});
        return kExitOk;
    }

private:
    MassFunction<S> mass(const std::string& flag, const std::string& path) {
        return io::mass_from_json<S>(load(path, flag), frame_, flag, opts_.tolerance);
    }

    Partition load_partition() {
        auto p = io::partition_from_json(load(opts_.partition, "--partition"), frame_, "--partition");
        if (!frame_) frame_ = p.frame();
        return p;
    }

    void write_mass(const MassFunction<S>& m) {
        if (table_)
            io::write_table(out_, m);
        else
            emit(out_, io::to_json(m));
    }

    int search(const std::vector<RevisionRule>& rules) {
        if (opts_.trials == 0) throw PreconditionError("--trials must be at least 1");
        GeneratorOptions gen;
        gen.frame_size = opts_.n;
        gen.max_atoms = opts_.max_atoms;
        gen.m1_focal = opts_.m1_focal;
        gen.m2_focal = opts_.m2_focal;
        gen.weight_max = opts_.weight_max;
        const auto policy = parse_mode(opts_.mode, FallbackPolicy::least_commitment);
        bool any = false;
        Json rows = Json::array();
        for (RevisionRule rule : rules) {
            const auto outcome =
                find_c1_violation<S>(rule, opts_.seed, opts_.trials, gen, policy, opts_.tolerance);
            Json row{{"rule", rule_name(rule)},
                     {"trials_run", outcome.trials_run},
                     {"undefined", outcome.undefined},
                     {"found", outcome.violation.has_value()}};
            if (outcome.violation) {
                any = true;
                const auto& v = *outcome.violation;
                row["trial"] = v.trial;
                row["partition"] = io::to_json(v.instance.partition);
                row["m1"] = io::to_json(v.instance.m1);
                row["m2"] = io::to_json(v.instance.m2);
                row["C1"] = io::to_json(v.report, v.instance.frame());
            }
            rows.push_back(std::move(row));
        }
        if (table_) {
            for (const auto& row : rows)
                out_ << row["rule"].get<std::string>() << "\t"
                     << (row["found"].get<bool>() ? "C1 violation at trial " + std::to_string(row["trial"].get<std::size_t>())
                                                  : "no violation in " + std::to_string(opts_.trials) + " trials")
                     << "\n";
        } else {
            emit(out_, Json{{"seed", opts_.seed}, {"mode", to_string(policy)}, {"search", rows}});
        }
        return any ? kExitConstraintFailure : kExitOk;
    }

    const Options& opts_;
    std::ostream& out_;
    bool table_;
    std::optional<Frame> frame_;
    CheckOptions check_;
};

template <class S>
int dispatch(const std::string& command, const Options& opts, std::ostream& out) {
    Runner<S> runner(opts, out);
    if (command == "bel") return runner.bel();
    if (command == "condition") return runner.condition();
    if (command == "jeffrey") return runner.jeffrey();
    if (command == "check") return runner.check();
    if (command == "compare") return runner.compare();
    if (command == "provability") return runner.provability();
    if (command == "gen") return runner.gen();
    throw InvalidInput("unknown command '" + command + "'");
}

double default_tolerance() {
    if (const char* env = std::getenv("BELIEFREV_TOLERANCE")) {
        try {
            return ScalarTraits<double>::parse(env);
        } catch (const InvalidInput&) {
            throw InvalidInput("BELIEFREV_TOLERANCE is not a number: '" + std::string(env) + "'");
        }
    }
    return kDefaultTolerance;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options opts;
    try {
        opts.tolerance = default_tolerance();
    } catch (const InvalidInput& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    }

    CLI::App app{"Belief-function revision toolkit: conditioning, Jeffrey rules and their constraints", "beliefrev"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--tolerance", opts.tolerance, "Numeric tolerance (default 1e-9, or BELIEFREV_TOLERANCE)");
    app.add_flag("--exact", opts.exact, "Exact rational arithmetic");
    app.add_option("--seed", opts.seed, "Seed for sampling and generators");
    app.add_option("--output", opts.output, "Report format")->check(CLI::IsMember({"json", "table"}));
    app.add_option("--frame", opts.frame, "Frame document, or comma-separated element names");

    auto* bel = app.add_subcommand("bel", "Mass, belief and plausibility of every subset");
    bel->add_option("--m1,--mass", opts.m1, "Mass document")->required();

    auto* cond = app.add_subcommand("condition", "Condition a mass function on an event");
    cond->add_option("--m1,--mass", opts.m1, "Mass document")->required();
    cond->add_option("--event", opts.event, "Event, e.g. a,b")->required();
    cond->add_option("--rule", opts.rule, "dempster | dempster-unnorm | geometric")->required();

    auto* jef = app.add_subcommand("jeffrey", "Revise m1 by m2 given on the subalgebra of a partition");
    jef->add_option("--rule", opts.rule, "geometric | dempster")->required();
    jef->add_option("--partition", opts.partition, "Partition document")->required();
    jef->add_option("--m1", opts.m1, "Prior mass document")->required();
    jef->add_option("--m2", opts.m2, "Revising mass document")->required();
    jef->add_option("--mode", opts.mode, "strict | least-commitment");

    auto* chk = app.add_subcommand("check", "Check constraints on a revision result");
    chk->add_option("--constraints", opts.constraints, "Comma list of C1, C2F, C3F, C2R, C3R, R1R2, shafer");
    chk->add_option("--partition", opts.partition, "Partition document")->required();
    chk->add_option("--m1", opts.m1, "Prior mass document");
    chk->add_option("--m2", opts.m2, "Revising mass document");
    chk->add_option("--m3", opts.m3, "Revised mass document");

    auto* cmp = app.add_subcommand("compare", "Run several revision rules and report C1/C3 side by side");
    cmp->add_option("--rules", opts.rules, "Comma list of rules");
    cmp->add_option("--partition", opts.partition, "Partition document");
    cmp->add_option("--m1", opts.m1, "Prior mass document");
    cmp->add_option("--m2", opts.m2, "Revising mass document");
    cmp->add_option("--mode", opts.mode, "Fallback for the Jeffrey rules: strict | least-commitment");
    cmp->add_flag("--search", opts.search, "Search seeded random instances for C1 violations instead");
    cmp->add_option("--trials", opts.trials, "Trials per rule for --search");
    cmp->add_option("--n", opts.n, "Frame size for --search");
    cmp->add_option("--atoms", opts.max_atoms, "Maximum number of atoms for --search (0: any)");

    auto* prov = app.add_subcommand("provability", "Probability-of-provability model");
    prov->add_option("--model", opts.model, "Model document")->required();
    prov->add_option("--op", opts.op, "bel | data-condition | source-condition | collapse");
    prov->add_option("--event", opts.event, "Conditioning proposition");

    auto* gen = app.add_subcommand("gen", "Generate a seeded random instance");
    gen->add_option("--kind", opts.kind, "instance | model");
    gen->add_option("--n", opts.n, "Frame size")->check(CLI::Range(1, 24));
    gen->add_option("--atoms", opts.max_atoms, "Maximum number of atoms (0: any)");
    gen->add_option("--m1-focal", opts.m1_focal, "Focal draws for m1");
    gen->add_option("--m2-focal", opts.m2_focal, "Focal draws for m2");
    gen->add_option("--weight-max", opts.weight_max, "Largest integer weight")->check(CLI::PositiveNumber);
    gen->add_flag("--bayesian", opts.bayesian, "Bayesian m1 and m2 on atoms");
    gen->add_option("--out-dir", opts.out_dir, "Also write partition.json, m1.json and m2.json here");

    std::vector<std::string> argv_storage{"beliefrev"};
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_storage) argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInputError;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        if (opts.exact) return dispatch<Rational>(command, opts, out);
        return dispatch<double>(command, opts, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    }
}

}  // namespace beliefrev::cli
