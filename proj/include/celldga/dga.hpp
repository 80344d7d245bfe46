#pragma once

// Cellular DGA: generators, gradings and the assembled differential.

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "celldga/cellcomplex.hpp"
#include "celldga/complex.hpp"
#include "celldga/freealg.hpp"

namespace celldga {

struct Generator {
    std::string id;
    std::string cell;
    std::string kind;  // "a", "b", "c" or "aux"
    int i = 0, j = 0;  // 1-based positions over the cell
    long long degree = 0;
    Sym sym;
};

struct Dga {
    long long m = 0;
    std::vector<Generator> gens;  // sorted by (cell, kind, i, j) after finalize()
    SymMap<Polynomial> diff;

    void add(Generator g, Polynomial d);
    void finalize();

    const Generator* find(std::string_view id) const;
    const Generator* find(Sym s) const;
    Grading grading() const;
    std::size_t size() const { return gens.size(); }

private:
    SymMap<std::size_t> index_;
};

// Id of the generator over `cell` at 0-based positions p < q, e.g. "b:e1:1,2".
std::string generator_id(char kind, const std::string& cell, int p, int q);

struct BuildOptions {
    std::optional<long long> m_override;
    std::vector<long long> base_mu;
};

Dga build_from_complex(const CellComplex& c, const BuildOptions& opts = {});
Dga build_dga(const Decomposition& d, const BuildOptions& opts = {});
Dga build_cellular(const ParallelDecomposition& p, bool decorated, const BuildOptions& opts = {});

struct Failure {
    std::string gen;
    Polynomial residual;
    std::string message;
};

// Generators whose differential squares to something nonzero.
std::vector<Failure> d_squared(const Dga& dga);
// Terms of diff(g) whose degree is not degree(g) - 1.
std::vector<Failure> degree_check(const Dga& dga);

nlohmann::json to_json(const Dga& dga);
Dga dga_from_json(const nlohmann::json& j);
nlohmann::json to_json(const std::vector<Failure>& failures);

}  // namespace celldga
