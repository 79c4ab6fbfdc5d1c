#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "reoimc/imc.hpp"

namespace reoimc {

class ModelFormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr int kModelFormatVersion = 1;

/// Same model with states sorted by label and transitions re-sorted.
Imc canonical(const Imc& m);

/// JSON model file in canonical order. Rates are written as the shortest
/// decimal string that reads back to the same double.
std::string save_model(const Imc& m);

/// Throws ModelFormatError on malformed JSON or an ill-formed model.
Imc load_model(std::string_view text);

/// Graphviz rendering: interactive edges dashed, Markovian edges solid,
/// initial state drawn as a double circle.
std::string export_dot(const Imc& m, std::string_view name = "imc");

}  // namespace reoimc
