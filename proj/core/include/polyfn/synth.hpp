#pragma once

#include "polyfn/decide.hpp"
#include "polyfn/funcspace.hpp"
#include "polyfn/gens.hpp"
#include "polyfn/polynomial.hpp"

namespace polyfn {

struct SynthesizedPolynomial {
  Polynomial polynomial;
  Witness source_witness;
  // Set once the polynomial's table has been compared against the witness
  // combination of generator tables at every argument.
  bool verified = false;
};

// sum alpha_{k,j} * generator_polynomial(k, j), like terms collected. No
// reduction modulo null polynomials is attempted.
// Throws UnknownGenerator if a witness key is missing from the basis.
SynthesizedPolynomial synthesize(const Witness& witness, const GeneratorBasis& basis);

// Tabulates a polynomial over every argument tuple, using Horner's rule in
// the first variable over groups of terms sharing the remaining exponents.
FuncTable eval_polynomial(const Polynomial& poly,
                          std::uint64_t table_limit = kDefaultTableLimit);

}  // namespace polyfn
