#pragma once

// Stable tame moves: stabilization, cancellation, elementary isomorphisms,
// and the swallowtail chain map.

#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "celldga/complex.hpp"
#include "celldga/dga.hpp"

namespace celldga {

struct DgaMorphism {
    std::shared_ptr<const Dga> source, target;
    SymMap<Polynomial> images;  // missing entries map a generator to itself

    Polynomial image(Sym s) const;
    Polynomial apply(const Polynomial& p) const;
};

DgaMorphism identity_morphism(std::shared_ptr<const Dga> d);
// g -> h(f(g))
DgaMorphism compose(const DgaMorphism& f, const DgaMorphism& h);

// Adds aux<N>.x in degree deg and aux<N>.y in degree deg - 1 with d(x) = y.
Dga stabilize(const Dga& dga, long long deg);

struct CancelPair {
    std::string x, y;
};

struct Cancelled {
    Dga dga;
    DgaMorphism quotient;  // old generators -> new polynomials
};

// Throws BadPair when d(x) lacks the term y, the remainder mentions x or y,
// or the degrees do not differ by one.
Cancelled cancel_with_map(const Dga& dga, const CancelPair& pair);
Dga cancel(const Dga& dga, const CancelPair& pair);

// Every pair currently admissible for cancel().
std::vector<CancelPair> valid_pairs(const Dga& dga);

// Folds cancel over pairs; throws BadPairAt carrying the failing index.
Cancelled cancel_pipeline(const Dga& dga, const std::vector<CancelPair>& pairs);

std::vector<CancelPair> pipeline_from_json(const nlohmann::json& j);
nlohmann::json to_json(const std::vector<CancelPair>& pairs);

// Conjugates d by the automorphism g -> g + v. Throws SelfReference when v
// mentions g and DegreeMismatch when v is not homogeneous of degree |g|.
std::pair<Dga, DgaMorphism> elementary_iso(const Dga& dga, const std::string& g, const Polynomial& v);

// Generators g with phi(d1 g) != d2 phi(g).
std::vector<Failure> verify_chain_map(const DgaMorphism& phi);

// For a subdivided square split only along R: the pairs that remove the
// new vertex and the lower half of R, and then the diagonal edge and the lower cell.
std::vector<CancelPair> cancellation1_pairs(const CellComplex& par, const Subdivision& s);
std::vector<CancelPair> cancellation2_pairs(const CellComplex& par, const Subdivision& s);

// The map from the transverse DGA of d to its decorated cellular DGA that
// right-multiplies each decorated edge matrix by I + E. With corrupted = true
// the E factor is dropped. Throws MissingDecoration if d has no S/T pair.
DgaMorphism swallowtail_phi(const Decomposition& d, bool corrupted = false, const BuildOptions& opts = {});

nlohmann::json to_json(const DgaMorphism& m);

}  // namespace celldga
