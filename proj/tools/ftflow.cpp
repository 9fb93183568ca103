#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ftflow/analysis.hpp"
#include "ftflow/complement.hpp"
#include "ftflow/invariant.hpp"
#include "ftflow/model_io.hpp"
#include "ftflow/surgery.hpp"
#include "ftflow/toolkit.hpp"
#include "ftflow/validate.hpp"

using namespace ftflow;

namespace {

enum Exit { kOk = 0, kFalse = 1, kInvalid = 2, kInternal = 3 };

// Input the user handed us is unusable.
struct BadInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

bool verbose = false;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw BadInput("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

FlowModel load_unchecked(const std::string& path) {
    try {
        return parse_model_unchecked(read_file(path));
    } catch (const ModelError& e) {
        throw BadInput(path + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        throw BadInput(path + ": " + e.what());
    }
}

FlowModel load(const std::string& path) {
    auto m = load_unchecked(path);
    auto rep = validate_model(m);
    if (!rep.ok()) throw BadInput(path + ": " + rep.to_text());
    return m;
}

void print_models(const std::vector<FlowModel>& ms) {
    for (size_t i = 0; i < ms.size(); ++i) {
        if (ms.size() > 1) std::cout << "# component " << i + 1 << "\n";
        std::cout << serialize_model(ms[i]);
        if (i + 1 < ms.size()) std::cout << "\n";
    }
}

void print_step(const SurgeryStep& s) {
    std::cout << "# step " << to_string(s.kind) << " " << s.target << "\n";
    if (verbose) {
        std::cout << "#   before " << s.before << "\n";
        for (const auto& a : s.after) std::cout << "#   after  " << a << "\n";
    }
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) out.push_back(tok);
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite type surface flows: validation, invariants, surgery, enumeration"};
    app.require_subcommand(1);
    std::string format = "compact";
    app.add_option("--format", format, "output style")
        ->check(CLI::IsMember({"compact", "verbose"}))
        ->each([](const std::string& v) { verbose = v == "verbose"; });
    app.fallthrough();

    std::string file, file_b, op, target;
    int result = kOk;

    auto* validate = app.add_subcommand("validate", "check a model file");
    validate->add_option("file", file)->required();
    validate->callback([&] {
        auto rep = validate_model(load_unchecked(file));
        std::cout << rep.to_text();
        result = rep.ok() ? kOk : kFalse;
    });

    auto* invariant = app.add_subcommand("invariant", "print the graph invariant");
    invariant->add_option("file", file)->required();
    invariant->callback([&] { std::cout << describe(compute_invariant(load(file))); });

    auto* canon = app.add_subcommand("canon", "print the canonical code");
    canon->add_option("file", file)->required();
    canon->callback([&] {
        auto m = load(file);
        std::cout << canonical_code(m).hex() << "\n";
        if (verbose) std::cout << "# structure " << structure_code(m).hex() << "\n";
    });

    auto* equiv = app.add_subcommand("equiv", "exit 0 iff two models are equivalent");
    equiv->add_option("a", file)->required();
    equiv->add_option("b", file_b)->required();
    equiv->callback([&] {
        bool eq = equivalent(load(file), load(file_b));
        std::cout << (eq ? "equivalent" : "not equivalent") << "\n";
        result = eq ? kOk : kFalse;
    });

    auto* classify = app.add_subcommand("classify", "label every piece");
    classify->add_option("file", file)->required();
    classify->callback([&] {
        auto m = load(file);
        auto labels = classify_components(m);
        if (!verbose) {
            for (const auto& [id, l] : labels) std::cout << id << " " << to_string(l) << "\n";
            return;
        }
        auto g = dual_graph(m);
        for (const auto& v : g.vertices) std::cout << v.id << " " << to_string(v.label) << " " << format_dss(v.dss) << "\n";
        for (const auto& [a, b] : g.edges) std::cout << "edge " << a << " " << b << "\n";
    });

    auto* height_cmd = app.add_subcommand("height", "height of the orbit class poset");
    height_cmd->add_option("file", file)->required();
    height_cmd->callback([&] {
        auto m = load(file);
        std::cout << height(m) << "\n";
        if (verbose) {
            auto P = orbit_class_poset(m);
            for (size_t i = 0; i < P.elements.size(); ++i) std::cout << P.elements[i] << " " << P.heights[i] << "\n";
        }
    });

    auto* omega = app.add_subcommand("omega-check", "is the non-wandering set the closure of the closed orbits");
    omega->add_option("file", file)->required();
    omega->callback([&] {
        auto m = load(file);
        bool ok = omega_equals_closure_of_closed(m);
        std::cout << (ok ? "true" : "false") << "\n";
        if (verbose) {
            std::cout << "# finite type " << (is_finite_type(m) ? "yes" : "no") << "\n";
            for (const auto& c : strict_limit_nonperiodic_circuits(m)) {
                std::cout << "# strict circuit";
                for (const auto& s : c) std::cout << " " << s;
                std::cout << "\n";
            }
        }
        result = ok ? kOk : kFalse;
    });

    auto* surgery = app.add_subcommand("surgery", "apply one operation: ct, co, cd, cherry, cherry-inverse");
    surgery->add_option("op", op)->required()->check(CLI::IsMember({"ct", "co", "cd", "cherry", "cherry-inverse"}));
    surgery->add_option("target", target, "piece, circle, saddle, or comma-separated loop")->required();
    surgery->add_option("file", file)->required();
    surgery->callback([&] {
        auto m = load(file);
        if (op == "cherry") {
            std::cout << serialize_model(cherry_blowup(m, target));
            return;
        }
        if (op == "cherry-inverse") {
            std::cout << serialize_model(cherry_inverse(m, target));
            return;
        }
        SurgeryResult r = op == "ct" ? cut_transversal(m, target)
                          : op == "co" ? cut_periodic(m, target)
                                       : cut_diagram_loop(m, split_commas(target));
        print_step(r.step);
        print_models(r.components);
    });

    auto* reduce = app.add_subcommand("reduce", "cut down to spheres with holes");
    reduce->add_option("file", file)->required();
    reduce->callback([&] {
        auto r = reduce_to_spheres(load(file));
        for (const auto& s : r.steps) print_step(s);
        print_models(r.spheres);
    });

    EnumerationBudget budget;
    std::vector<std::string> surfaces;
    bool raw = false;
    auto* enumerate = app.add_subcommand("enumerate", "list models up to equivalence within a budget");
    enumerate->add_option("--max-seps", budget.max_seps)->required();
    enumerate->add_option("--max-points", budget.max_points)->required();
    enumerate->add_option("--max-cycles", budget.max_cycles, "limit cycles (default 0)");
    enumerate->add_option("--surface", surfaces, "sphere, torus, rp2, klein, ...; repeatable")->required();
    enumerate->add_flag("--no-prefilter", raw, "do not skip vertex sets by index sum");
    enumerate->callback([&] {
        for (const auto& s : surfaces) {
            auto spec = surface_from_name(s);
            if (!spec || spec->boundary) throw BadInput("unsupported surface " + s);
            budget.surfaces.push_back(*spec);
        }
        budget.index_prefilter = !raw;
        EnumerationStats stats;
        auto models = enumerate_models(budget, &stats);
        std::cout << "# " << models.size() << " models from " << stats.candidates << " cell structures, " << stats.valid
                  << " valid labellings\n";
        for (const auto& m : models) {
            if (verbose) std::cout << "\n" << serialize_model(m);
            else std::cout << surface_name(m.surface) << " " << canonical_code(m).hex() << "\n";
        }
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kInvalid;
    } catch (const BadInput& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kInvalid;
    } catch (const ModelError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kInvalid;
    } catch (const SurgeryError& e) {
        std::cerr << to_string(e.code) << ": " << e.what() << "\n";
        return kFalse;
    } catch (const InvariantError& e) {
        std::cerr << e.what() << "\n";
        return kFalse;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInternal;
    }
    return result;
}
