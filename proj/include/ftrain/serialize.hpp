#pragma once

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "ftrain/function_train.hpp"

namespace ft {

/// Serializes a fiber to JSON.  Global expansions become
/// {"kind":"poly","interval":[lo,hi],"coeffs":[...]}, piecewise ones become
/// {"kind":"piecewise","breakpoints":[...],"pieces":[[...],...]} where piece i
/// lives on [breakpoints[i], breakpoints[i+1]].
nlohmann::json fiber_to_json(const Fiber& f);
Fiber fiber_from_json(const nlohmann::json& j);

/// Full train document: {"format":"ftrain","version":1,"basis":"legendre-orthonormal",
/// "dim":d,"ranks":[...],"cores":[{"interval":[lo,hi],"rows":r,"cols":c,"entries":[...]}]}.
/// Entries are row-major.
nlohmann::json ft_to_json(const FunctionTrain& ft);
FunctionTrain ft_from_json(const nlohmann::json& j);

/// File round trip.  Loading rejects documents whose format tag or version does
/// not match with std::runtime_error.
void ft_save(const FunctionTrain& ft, const std::string& path);
FunctionTrain ft_load(const std::string& path);

} // namespace ft
