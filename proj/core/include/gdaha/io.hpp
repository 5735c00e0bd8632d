#pragma once

// JSON and CSV forms of the objects passed between pipeline stages. Complex
// numbers are [re, im] pairs, matrices are arrays of rows, exact scalars are
// strings such as "3/7-1/2i".

#include <iosfwd>
#include <memory>
#include <vector>

#include <nlohmann/json.hpp>

#include "gdaha/ds_solver.hpp"
#include "gdaha/monodromy.hpp"
#include "gdaha/rh_flow.hpp"

namespace gdaha::io {

using json = nlohmann::json;

json to_json(Complex z);
Complex complex_from(const json& j);
json to_json(const CMatrix& m);
CMatrix matrix_from(const json& j);
json to_json(const QMatrix& m);
QMatrix qmatrix_from(const json& j);
/// Accepts a string ("1/3", "0.25", "1/2-3i") or a JSON number, read through its
/// decimal text so that 0.13 means 13/100.
QComplex qcomplex_from(const json& j);

/// {"legs": [d_1, ...], "gamma": [[...], ...], "nu": "..."}; gamma rows follow the
/// caller's leg order. Throws ParseError and the validation errors of params.
RationalParams params_from_json(const json& j);
json to_json(const RationalParams& p);
/// mu, xi, hbar, u, t, q and the affine/obstruction diagnostics.
json params_report(const RationalParams& p);

json to_json(const ResidualReport& r);
json to_json(const MatrixRep& rep);
/// Matrices are looked up by generator label; missing labels raise ParseError.
MatrixRep rep_from_json(const json& j, std::shared_ptr<const Presentation> presentation);

json to_json(const ConjugacyClassSpec& spec);
json to_json(const DSSolution& sol);
DSSolution ds_from_json(const json& j);

json to_json(const LoopGeometry& g);
LoopGeometry geometry_from_json(const json& j);
json to_json(const MonodromyData& mon);

json to_json(const FlowTrajectory& traj);
/// Columns kappa_re, kappa_im, residual, drift, inv_<i>_re, inv_<i>_im.
void write_trajectory_csv(std::ostream& out, const FlowTrajectory& traj);
/// One row per eigenvalue: matrix, index, re, im.
void write_spectra_csv(std::ostream& out, const std::vector<CMatrix>& tuple);

}  // namespace gdaha::io
