// celldga: build and check cellular DGAs of Legendrian surfaces.

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "celldga/catalog.hpp"
#include "celldga/complex.hpp"
#include "celldga/dga.hpp"
#include "celldga/error.hpp"
#include "celldga/invariants.hpp"
#include "celldga/transform.hpp"

using namespace celldga;
using nlohmann::json;

namespace {

struct Exit {
    int code;
};

json read_json_arg(const std::string& arg) {
    std::string text;
    if (arg == "-") {
        text.assign(std::istreambuf_iterator<char>(std::cin), {});
    } else {
        std::ifstream in(arg);
        if (!in) throw Error(ErrorCode::Parse, "cannot read " + arg);
        text.assign(std::istreambuf_iterator<char>(in), {});
    }
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::Parse, arg + ": " + e.what());
    }
}

// "catalog:NAME", a file, or "-" for stdin
json load(const std::string& arg) {
    if (arg.rfind("catalog:", 0) == 0) return to_json(catalog_entry(arg.substr(8)));
    return read_json_arg(arg);
}

bool is_dga(const json& j) { return j.is_object() && j.contains("generators"); }

Decomposition load_decomposition(const std::string& arg) {
    json j = load(arg);
    if (is_dga(j)) throw Error(ErrorCode::Parse, arg + " is a DGA, a decomposition is needed here");
    return decomposition_from_json(j);
}

struct GradingFlags {
    std::optional<long long> m_override;
    std::vector<long long> base_mu;
    std::string presentation = "transverse";

    BuildOptions options() const { return {m_override, base_mu}; }
};

Dga load_dga(const std::string& arg, const GradingFlags& g) {
    json j = load(arg);
    if (is_dga(j)) return dga_from_json(j);
    Decomposition d = decomposition_from_json(j);
    if (g.presentation == "transverse") return build_dga(d, g.options());
    return build_cellular(to_parallel(d), g.presentation == "decorated", g.options());
}

void print(const json& j) { std::cout << j.dump(2) << '\n'; }

void add_grading_flags(CLI::App* sub, GradingFlags& g, bool presentation) {
    sub->add_option("--m-override", g.m_override, "grading modulus; must divide the Maslov number");
    sub->add_option("--base-mu", g.base_mu, "potential of each component's base region, comma separated")
        ->delimiter(',');
    if (presentation)
        sub->add_option("--presentation", g.presentation, "transverse, cellular or decorated")
            ->check(CLI::IsMember({"transverse", "cellular", "decorated"}));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cellular DGAs of Legendrian surfaces from square decompositions"};
    app.require_subcommand(1);
    bool error_json = false;
    app.add_flag("--error-json", error_json, "report errors as JSON on stdout");

    std::string input;
    GradingFlags grading;

    auto* validate_cmd = app.add_subcommand("validate", "check a decomposition");
    validate_cmd->add_option("input", input, "file, - or catalog:NAME")->required();

    auto* build_cmd = app.add_subcommand("build", "assemble the DGA");
    build_cmd->add_option("input", input)->required();
    add_grading_flags(build_cmd, grading, true);

    auto* d2_cmd = app.add_subcommand("d2", "list generators with nonzero d^2 or inhomogeneous d");
    d2_cmd->add_option("input", input)->required();
    add_grading_flags(d2_cmd, grading, true);

    std::string pipeline_file;
    auto* simplify_cmd = app.add_subcommand("simplify", "apply a cancellation pipeline");
    simplify_cmd->add_option("input", input)->required();
    simplify_cmd->add_option("--pipeline", pipeline_file, "JSON list of {\"x\", \"y\"}")->required();
    add_grading_flags(simplify_cmd, grading, true);

    int cap = 24;
    bool list = false;
    auto* augment_cmd = app.add_subcommand("augment", "count augmentations");
    augment_cmd->add_option("input", input)->required();
    augment_cmd->add_option("--cap", cap, "maximum number of degree 0 generators");
    augment_cmd->add_flag("--list", list, "list the augmentations");
    add_grading_flags(augment_cmd, grading, true);

    auto* linhom_cmd = app.add_subcommand("linhom", "linearized homology ranks");
    linhom_cmd->add_option("input", input)->required();
    linhom_cmd->add_option("--cap", cap, "maximum number of degree 0 generators when searching");
    add_grading_flags(linhom_cmd, grading, true);

    bool corrupted = false;
    auto* iso_cmd = app.add_subcommand("iso-check", "check the swallowtail chain map");
    iso_cmd->add_option("input", input)->required();
    iso_cmd->add_flag("--corrupted", corrupted, "drop the E factor (negative control)");
    add_grading_flags(iso_cmd, grading, false);

    auto* parallel_cmd = app.add_subcommand("parallel", "subdivide into the parallel decomposition");
    parallel_cmd->add_option("input", input)->required();

    std::string name;
    auto* catalog_cmd = app.add_subcommand("catalog", "list catalog entries or print one");
    catalog_cmd->add_option("name", name);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*validate_cmd) {
            ValidationReport r = validate(load_decomposition(input));
            print(to_json(r));
            return r.ok() ? 0 : 1;
        }
        if (*build_cmd) {
            Dga dga = load_dga(input, grading);
            json out = to_json(dga);
            out["d_squared"] = to_json(d_squared(dga));
            print(out);
            return 0;
        }
        if (*d2_cmd) {
            Dga dga = load_dga(input, grading);
            auto f = d_squared(dga);
            auto g = degree_check(dga);
            print({{"d_squared", to_json(f)}, {"degree", to_json(g)}});
            return f.empty() && g.empty() ? 0 : 1;
        }
        if (*simplify_cmd) {
            Dga dga = load_dga(input, grading);
            Cancelled c = cancel_pipeline(dga, pipeline_from_json(read_json_arg(pipeline_file)));
            print(to_json(c.dga));
            return 0;
        }
        if (*augment_cmd) {
            Dga dga = load_dga(input, grading);
            AugmentationResult r = augmentations(dga, cap, list ? (std::size_t{1} << 20) : 0);
            json out = to_json(dga, r);
            if (!list) out.erase("augmentations");
            print(out);
            return 0;
        }
        if (*linhom_cmd) {
            Dga dga = load_dga(input, grading);
            Augmentation eps{std::vector<std::uint8_t>(dga.size(), 0)};
            if (!is_augmentation(dga, eps)) {
                AugmentationResult r = augmentations(dga, cap, 1);
                if (r.list.empty()) throw Error(ErrorCode::InvalidAugmentation, "the DGA has no augmentation");
                eps = r.list.front();
            }
            json used = json::object();
            for (std::size_t i = 0; i < dga.size(); ++i)
                if (eps.eps[i]) used[dga.gens[i].id] = 1;
            print({{"m", dga.m}, {"augmentation", used}, {"betti", betti_json(betti(linearize(dga, eps)))}});
            return 0;
        }
        if (*iso_cmd) {
            DgaMorphism phi = swallowtail_phi(load_decomposition(input), corrupted, grading.options());
            auto f = verify_chain_map(phi);
            print({{"chain_map", f.empty()}, {"failures", to_json(f)}, {"phi", to_json(phi)}});
            return f.empty() ? 0 : 1;
        }
        if (*parallel_cmd) {
            print(to_json(to_parallel(load_decomposition(input))));
            return 0;
        }
        if (*catalog_cmd) {
            if (name.empty()) {
                for (const auto& n : catalog_names()) std::cout << n << '\n';
            } else {
                print(to_json(catalog_entry(name)));
            }
            return 0;
        }
    } catch (const Error& e) {
        const int rc = e.code() == ErrorCode::Parse ? 2 : 1;
        if (error_json) {
            json out = {{"error", std::string(error_name(e.code()))}, {"message", e.what()}};
            if (e.index() >= 0) out["index"] = e.index();
            print(out);
        } else {
            std::cerr << "error: " << error_name(e.code()) << ": " << e.what() << '\n';
        }
        return rc;
    }
    return 0;
}
