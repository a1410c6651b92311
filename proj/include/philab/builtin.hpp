#pragma once

// The algebras A, A3CT and A (x) A3CT, and module literals such as
// "S3+S4" or "P1^2+S2".

#include <string>
#include <string_view>

#include "philab/module.hpp"

namespace philab {

extern const char* const kPresentationA;
extern const char* const kPresentationA3CT;

/// Cached per modulus; safe to call after set_modulus.
AlgebraPtr algebra_A();
AlgebraPtr algebra_A3CT();
AlgebraPtr algebra_A_tensor();

/// "A", "A3CT" or "A_tensor_A3CT"; anything else is read as a presentation
/// file path.
AlgebraPtr resolve_algebra(const std::string& name_or_path);

/// Sum of terms S<i>, P<i> (1-indexed vertices), each optionally raised to
/// a power ^n. Throws ParseError.
Module parse_module_literal(const AlgebraPtr& alg, std::string_view text);

}  // namespace philab
