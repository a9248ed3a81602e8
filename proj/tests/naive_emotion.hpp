#pragma once

// Straightforward re-transcription of the emotion pipeline used as an
// independent oracle: plain arrays, explicit index loops, its own stencils
// and sign handling. Deliberately shares no evaluation code with the
// library implementation.

#include <map>
#include <string>
#include <vector>

#include "infospace/constants.hpp"
#include "infospace/lattice.hpp"

namespace naive {

struct Result {
    std::vector<double> mu;
    std::map<std::string, std::vector<double>> psi_terms;
    std::vector<double> psi;
    std::map<std::string, std::vector<double>> gamma_terms;
    std::vector<double> gamma;
    std::vector<double> q;
};

/// T and D are rank-m contravariant component arrays laid out site-major,
/// index-major (same layout the library uses, for comparability);
/// n holds one positive integer per site.
Result evaluate(const infospace::Lattice4& lattice, int m, const std::vector<double>& t_data,
                const std::vector<double>& d_data, const std::vector<double>& n_data,
                const infospace::InfoConstants& k);

}  // namespace naive
