#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "hek/geometry.hpp"
#include "hek/profile.hpp"
#include "hek/shoot.hpp"

namespace hek {

using Json = nlohmann::ordered_json;

/// Reals as %.17g; non-finite values become null.
std::string format_real(double x);

/// Deterministic JSON text: insertion-ordered keys, 2-space indent, reals via format_real.
std::string dump_json(const Json& doc);

Json surface_json(const SurfaceSpec& spec);
Json residuals_json(const ProfileSolution& prof);
Json futaki_json(const FutakiReport& report);
Json cone_json(const ConeVerdict& verdict);
Json class_integrals_json(const ClassIntegrals& ci);

/// Full solve document: surface, solver provenance, coefficients, residuals,
/// class integrals, Bando-Futaki report, the profile on the grid and the
/// integrator knots.
Json solve_document(const ProfileSolution& prof);

/// Rebuilds the profile from a solve document. Error(InvalidInput) on a
/// malformed document.
ProfileSolution profile_from_document(const Json& doc);

/// CSV with header gamma,v,phi,lambda; one row per grid point.
std::string profile_csv(const ProfileSolution& prof);
std::string scan_csv(const std::vector<ScanRow>& rows);
std::string phase_csv(const std::vector<PhaseRow>& rows);
/// Flat key,value rendering of an object's scalar leaves (nested keys joined by '.').
std::string flat_csv(const Json& doc);

}  // namespace hek
