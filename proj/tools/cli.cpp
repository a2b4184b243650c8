// Copyright 2026 The MDI-QCT Simulator Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "mdiqct/adversaries.hpp"
#include "mdiqct/analysis.hpp"
#include "mdiqct/errors.hpp"
#include "mdiqct/protocol.hpp"
#include "mdiqct/qmath.hpp"
#include "mdiqct/transcript_io.hpp"

namespace mdiqct::cli {

namespace {

using nlohmann::ordered_json;

// Thrown for bad input detected after flag parsing (exit code 2).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string config_path;
    std::string format = "json";
    std::string out_path;

    double y = 0.9;
    double la = 0.0;
    double lb = 0.0;
    double loss = kDefaultLossDbPerKm;
    double eta = 0.1;
    double dark = 1e-4;
    bool extended = false;
    std::string mode = "mdi";
    unsigned k = 1;
    double mu = 0.1;
    std::uint64_t max_rounds = kDefaultMaxRounds;

    std::uint64_t trials = 0;
    std::uint64_t seed = 1;
    unsigned workers = 0;

    std::string adversary = "none";
    int target = 0;
    std::string sent_state = "plus";

    double lmin = 0.0;
    double lmax = 50.0;
    double step = 5.0;
    double tolerance = 1e-12;
};

std::string num(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string label_name(StateLabel l) { return "phi" + std::to_string(l.basis()) + std::to_string(l.bit()); }

DarkCountModel model_of(const Options& o) { return o.extended ? DarkCountModel::Extended : DarkCountModel::Standard; }

RunConfig make_config(const Options& o) {
    validate_y(o.y);
    RunConfig config;
    config.y = o.y;
    config.channel = ChannelParams{o.la, o.lb, o.loss};
    config.detector = DetectorParams{o.eta, o.dark};
    config.dark_count_model = model_of(o);
    config.mode = parse_mode(o.mode);
    config.max_rounds = o.max_rounds;
    if (config.mode == Mode::MdiWeakCoherent) {
        config.source_a = SourceModel::weak_coherent(o.mu);
        config.source_b = SourceModel::weak_coherent(o.mu);
        config.pulses = o.k;
    }
    config.validate();
    return config;
}

// ---------------------------------------------------------------------------
// Commands. Each returns the full output document.

std::string cmd_tables(const Options& o) {
    validate_y(o.y);
    const VerificationTable table(o.y);
    const HonestStates states(o.y);

    struct Cell {
        std::string table, outcome, alice, bob;
        double probability;
        bool zero;
    };
    std::vector<Cell> cells;
    for (BsmOutcome outcome : kBellOutcomes) {
        for (StateLabel a : kAllLabels) {
            for (StateLabel b : kAllLabels) {
                cells.push_back({"verification", std::string(to_string(outcome)), label_name(a), label_name(b),
                                 table.probability(outcome, a, b), VerificationTable::is_zero_cell(outcome, a, b)});
            }
        }
    }
    for (BsmOutcome outcome : kBellOutcomes) {
        for (CheatState sent : {CheatState::Plus, CheatState::Minus}) {
            const PureState photon = sent == CheatState::Plus ? PureState::plus() : PureState::minus();
            for (StateLabel b : kAllLabels) {
                const BellProbabilities p = bell_projection_probs(photon, states[b]);
                const double value = (outcome == BsmOutcome::PsiPlus ? p.psi_plus : p.psi_minus) / p.identified();
                cells.push_back({"cheat", std::string(to_string(outcome)), std::string(to_string(sent)), label_name(b),
                                 value, value == 0.0});
            }
        }
    }

    std::ostringstream os;
    if (o.format == "json") {
        ordered_json doc;
        doc["command"] = "tables";
        doc["y"] = o.y;
        ordered_json t1 = ordered_json::array();
        ordered_json t2 = ordered_json::array();
        for (const Cell& c : cells) {
            ordered_json row{{"outcome", c.outcome}, {"alice", c.alice}, {"bob", c.bob}, {"probability", c.probability}};
            if (c.table == "verification") {
                row["zero_cell"] = c.zero;
                t1.push_back(std::move(row));
            } else {
                t2.push_back(std::move(row));
            }
        }
        doc["verification_table"] = std::move(t1);
        doc["cheat_table"] = std::move(t2);
        os << doc.dump(2) << '\n';
    } else if (o.format == "csv") {
        os << "table,outcome,alice,bob,probability,zero_cell\n";
        for (const Cell& c : cells) {
            os << c.table << ',' << c.outcome << ',' << c.alice << ',' << c.bob << ',' << num(c.probability) << ','
               << (c.zero ? 1 : 0) << '\n';
        }
    } else {
        char buf[32];
        auto panel = [&](const std::string& which, const std::string& outcome, const std::vector<std::string>& rows) {
            os << which << " table" << " (" << outcome << "), y = " << num(o.y) << '\n';
            os << "          ";
            for (StateLabel b : kAllLabels) {
                os << "   " << label_name(b) << "  ";
            }
            os << '\n';
            for (const std::string& row : rows) {
                std::snprintf(buf, sizeof(buf), "%-8s  ", row.c_str());
                os << buf;
                for (const Cell& c : cells) {
                    if (c.table == which && c.outcome == outcome && c.alice == row) {
                        std::snprintf(buf, sizeof(buf), "%8.6f%s ", c.probability, c.zero && which == "verification" ? "*" : " ");
                        os << buf;
                    }
                }
                os << '\n';
            }
            os << '\n';
        };
        std::vector<std::string> honest_rows;
        for (StateLabel a : kAllLabels) {
            honest_rows.push_back(label_name(a));
        }
        for (BsmOutcome outcome : kBellOutcomes) {
            panel("verification", std::string(to_string(outcome)), honest_rows);
        }
        for (BsmOutcome outcome : kBellOutcomes) {
            panel("cheat", std::string(to_string(outcome)), {"plus", "minus"});
        }
        os << "* zero cell: Bob aborts\n";
    }
    return os.str();
}

std::string cmd_run(const Options& o) {
    const RunConfig config = make_config(o);
    const std::uint64_t trials = o.trials == 0 ? 10 : o.trials;
    std::unique_ptr<AdversaryStrategy> strategy;
    if (o.adversary == "none") {
        strategy = std::make_unique<HonestStrategy>();
    } else {
        strategy = make_adversary(o.adversary, o.y, o.target, parse_cheat_state(o.sent_state));
    }
    check_compatible(config, *strategy);
    const std::vector<Transcript> transcripts = run_many(config, *strategy, trials, o.seed, o.workers);
    std::string text;
    if (o.format == "csv") {
        text += csv_header();
        text += '\n';
    }
    for (const Transcript& t : transcripts) {
        text += o.format == "csv" ? to_csv_row(t) : to_json_line(t);
        text += '\n';
    }
    return text;
}

ordered_json rate(std::uint64_t hits, std::uint64_t total) {
    if (total == 0) {
        return nullptr;
    }
    return static_cast<double>(hits) / static_cast<double>(total);
}

double ideal_value(const std::string& adversary, double y) {
    if (adversary == "bob-med") {
        return cheat_bob(y);
    }
    if (adversary == "alice-individual") {
        return alice_individual_strategy_value(y);
    }
    if (adversary == "alice-coherent") {
        return cheat_alice_coherent(y);
    }
    if (adversary == "alice-blinding") {
        return 1.0;
    }
    return 0.5;
}

std::string cmd_attack(const Options& o) {
    const RunConfig config = make_config(o);
    const std::uint64_t trials = o.trials == 0 ? 100000 : o.trials;
    const CheatState sent = parse_cheat_state(o.sent_state);
    const auto strategy = make_adversary(o.adversary, o.y, o.target, sent);
    check_compatible(config, *strategy);
    const AttackSummary s = summarize_attack(config, *strategy, trials, o.seed, o.workers);
    const Estimate est = Estimate::from_counts(s.successes, s.trials, o.seed);
    const bool has_guess = s.guess_correct + s.guess_wrong > 0;

    std::ostringstream os;
    if (o.format == "json") {
        ordered_json doc;
        doc["command"] = "attack";
        doc["adversary"] = o.adversary;
        doc["mode"] = o.mode;
        doc["y"] = o.y;
        doc["target_coin"] = o.target;
        doc["sent_state"] = o.adversary == "alice-coherent" ? ordered_json(o.sent_state) : ordered_json(nullptr);
        doc["trials"] = trials;
        doc["seed"] = o.seed;
        doc["successes"] = s.successes;
        doc["success_rate"] = est.mean;
        doc["standard_error"] = est.standard_error;
        doc["abort_rate"] = rate(s.aborts, trials);
        doc["ideal_value"] = ideal_value(o.adversary, o.y);
        if (has_guess) {
            doc["guess"] = ordered_json{{"correct", s.guess_correct},
                                        {"correct_success_rate", rate(s.guess_correct_successes, s.guess_correct)},
                                        {"wrong", s.guess_wrong},
                                        {"wrong_success_rate", rate(s.guess_wrong_successes, s.guess_wrong)}};
        } else {
            doc["guess"] = nullptr;
        }
        os << doc.dump(2) << '\n';
    } else {
        auto opt_rate = [](std::uint64_t hits, std::uint64_t total) {
            return total == 0 ? std::string() : num(static_cast<double>(hits) / static_cast<double>(total));
        };
        os << "adversary,mode,y,target_coin,trials,seed,successes,success_rate,standard_error,abort_rate,ideal_value,"
              "guess_correct,guess_correct_success_rate,guess_wrong,guess_wrong_success_rate\n";
        os << o.adversary << ',' << o.mode << ',' << num(o.y) << ',' << o.target << ',' << trials << ',' << o.seed
           << ',' << s.successes << ',' << num(est.mean) << ',' << num(est.standard_error) << ','
           << opt_rate(s.aborts, trials) << ',' << num(ideal_value(o.adversary, o.y)) << ',';
        if (has_guess) {
            os << s.guess_correct << ',' << opt_rate(s.guess_correct_successes, s.guess_correct) << ','
               << s.guess_wrong << ',' << opt_rate(s.guess_wrong_successes, s.guess_wrong);
        } else {
            os << ",,,";
        }
        os << '\n';
    }
    return os.str();
}

std::string cmd_sweep(const Options& o) {
    const DetectorParams detector{o.eta, o.dark};
    const auto points = sweep_distance(o.lmin, o.lmax, o.step, detector, o.loss, model_of(o));
    std::ostringstream os;
    if (o.format == "json") {
        ordered_json doc;
        doc["command"] = "sweep";
        doc["eta"] = o.eta;
        doc["dark"] = o.dark;
        doc["loss"] = o.loss;
        doc["dark_count_model"] = o.extended ? "extended" : "standard";
        ordered_json rows = ordered_json::array();
        for (const SweepPoint& p : points) {
            rows.push_back({{"L_km", p.length_km},
                            {"pr_h", p.pr_h},
                            {"pr_h_per_run", p.pr_h_per_run},
                            {"dark_dark_fraction", p.dark_dark_fraction}});
        }
        doc["points"] = std::move(rows);
        os << doc.dump(2) << '\n';
    } else {
        os << "L_km,pr_h,pr_h_per_run,dark_dark_fraction\n";
        for (const SweepPoint& p : points) {
            os << num(p.length_km) << ',' << num(p.pr_h) << ',' << num(p.pr_h_per_run) << ','
               << num(p.dark_dark_fraction) << '\n';
        }
    }
    return os.str();
}

std::string cmd_fair(const Options& o) {
    const FairPoint f = solve_fair_y(o.tolerance);
    std::ostringstream os;
    if (o.format == "json") {
        ordered_json doc;
        doc["command"] = "fair";
        doc["tolerance"] = o.tolerance;
        doc["y"] = f.y;
        doc["bias"] = f.bias;
        doc["residual"] = f.residual;
        doc["iterations"] = f.iterations;
        doc["cheat_bob"] = cheat_bob(f.y);
        doc["cheat_alice_coherent"] = cheat_alice_coherent(f.y);
        os << doc.dump(2) << '\n';
    } else {
        os << "y,bias,residual,iterations,cheat_bob,cheat_alice_coherent\n";
        os << num(f.y) << ',' << num(f.bias) << ',' << num(f.residual) << ',' << f.iterations << ','
           << num(cheat_bob(f.y)) << ',' << num(cheat_alice_coherent(f.y)) << '\n';
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Flag wiring

void add_output(CLI::App* sub, Options& o, bool text) {
    std::vector<std::string> formats{"json", "csv"};
    if (text) {
        formats.emplace_back("text");
    }
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember(formats));
    sub->add_option("--out", o.out_path, "Write output to this file instead of stdout");
    sub->add_option("--config", o.config_path, "JSON file with flag values (keys are flag names)");
}

void add_y(CLI::App* sub, Options& o) { sub->add_option("--y", o.y, "Encoding parameter y in (1/2, 1)"); }

void add_devices(CLI::App* sub, Options& o) {
    sub->add_option("--eta", o.eta, "Detector efficiency");
    sub->add_option("--dark", o.dark, "Dark count probability per detector and gate");
    sub->add_option("--loss", o.loss, "Fiber loss in dB/km");
    sub->add_flag("--extended", o.extended, "Also count photon+dark events where the partner photon was lost");
}

void add_protocol(CLI::App* sub, Options& o) {
    add_y(sub, o);
    add_devices(sub, o);
    sub->add_option("--la", o.la, "Alice's fiber length in km");
    sub->add_option("--lb", o.lb, "Bob's fiber length in km");
    sub->add_option("--mode", o.mode, "Protocol variant")
        ->check(CLI::IsMember({"mdi", "mdi-weak-coherent", "baseline"}));
    sub->add_option("--k", o.k, "Pulse slots per run (weak-coherent mode)");
    sub->add_option("--mu", o.mu, "Mean photon number (weak-coherent mode)");
    sub->add_option("--max-rounds", o.max_rounds, "Restart cap per run");
    sub->add_option("--trials", o.trials, "Number of runs");
    sub->add_option("--seed", o.seed, "Master seed");
    sub->add_option("--workers", o.workers, "Worker threads (0 = all cores); never changes results");
    std::vector<std::string> names(kAdversaryNames.begin(), kAdversaryNames.end());
    sub->add_option("--adversary", o.adversary, "Cheating strategy")->check(CLI::IsMember(names));
    sub->add_option("--target", o.target, "Coin value the adversary aims for")->check(CLI::IsMember({0, 1}));
    sub->add_option("--sent-state", o.sent_state, "State sent in the coherent attack")
        ->check(CLI::IsMember({"plus", "minus"}));
}

void apply_config(CLI::App* sub, const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot read config file '" + path + "'");
    }
    ordered_json doc;
    try {
        doc = ordered_json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw UsageError("config file '" + path + "' is not valid JSON: " + e.what());
    }
    if (!doc.is_object()) {
        throw UsageError("config file must hold a JSON object");
    }
    for (const auto& [key, value] : doc.items()) {
        if (key == "config") {
            throw UsageError("config files cannot nest");
        }
        CLI::Option* opt = sub->get_option_no_throw("--" + key);
        if (opt == nullptr) {
            throw UsageError("unknown config key '" + key + "' for command '" + sub->get_name() + "'");
        }
        if (opt->count() > 0) {
            continue;  // command-line flag wins
        }
        std::string text;
        if (value.is_string()) {
            text = value.get<std::string>();
        } else if (value.is_number() || value.is_boolean()) {
            text = value.dump();
        } else {
            throw UsageError("config key '" + key + "' must be a string, number or boolean");
        }
        opt->add_result(text);
        opt->run_callback();
    }
}

std::uint64_t env_seed() {
    const char* raw = std::getenv(kSeedEnv);
    if (raw == nullptr || *raw == '\0') {
        return 1;
    }
    const std::string text(raw);
    std::uint64_t value = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
        throw UsageError(std::string(kSeedEnv) + " must be a non-negative integer");
    }
    return value;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Simulator for measurement-device-independent quantum coin tossing", "mdiqct"};
    app.require_subcommand(1);

    CLI::App* tables = app.add_subcommand("tables", "Closed-form Bell-outcome tables");
    add_y(tables, o);
    add_output(tables, o, true);

    CLI::App* run_cmd = app.add_subcommand("run", "Protocol runs as transcript records");
    add_protocol(run_cmd, o);
    add_output(run_cmd, o, false);

    CLI::App* attack = app.add_subcommand("attack", "Success rate of a cheating strategy");
    add_protocol(attack, o);
    add_output(attack, o, false);

    CLI::App* sweep = app.add_subcommand("sweep", "Honest abort probability versus distance");
    add_devices(sweep, o);
    sweep->add_option("--lmin", o.lmin, "First distance per side in km");
    sweep->add_option("--lmax", o.lmax, "Last distance per side in km");
    sweep->add_option("--step", o.step, "Distance step in km");
    add_output(sweep, o, false);

    CLI::App* fair = app.add_subcommand("fair", "Encoding parameter where both parties cheat equally well");
    fair->add_option("--tol", o.tolerance, "Bisection tolerance on y");
    add_output(fair, o, false);

    try {
        o.seed = env_seed();
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
        CLI::App* sub = app.get_subcommands().front();
        if (!o.config_path.empty()) {
            apply_config(sub, o.config_path);
        }
        if (sub == attack) {
            // Cheating probabilities are stated for ideal devices.
            if (sub->get_option("--eta")->count() == 0) {
                o.eta = 1.0;
            }
            if (sub->get_option("--dark")->count() == 0) {
                o.dark = 0.0;
            }
        }

        std::string text;
        if (sub == tables) {
            text = cmd_tables(o);
        } else if (sub == run_cmd) {
            text = cmd_run(o);
        } else if (sub == attack) {
            text = cmd_attack(o);
        } else if (sub == sweep) {
            text = cmd_sweep(o);
        } else {
            text = cmd_fair(o);
        }

        if (o.out_path.empty()) {
            out << text;
            out.flush();
        } else {
            std::ofstream file(o.out_path, std::ios::binary | std::ios::trunc);
            file << text;
            file.close();
            if (!file) {
                err << "error: cannot write '" << o.out_path << "'\n";
                return kExitRuntime;
            }
        }
        return kExitOk;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, err, err);
        return kExitUsage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        // ParameterError and ConfigurationError: bad values or combinations.
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
}

}  // namespace mdiqct::cli
