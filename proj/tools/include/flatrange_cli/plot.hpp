#pragma once

#include <optional>
#include <string>

#include "flatrange/cmat.hpp"
#include "flatrange/numrange.hpp"
#include "flatrange/reducible5.hpp"

namespace flatrange::cli {

struct SvgOptions {
  bool support_lines = false;
  Tolerances tol;
};

/// Recognises A1 (+) A2 exactly as produced by assemble_5x5.
std::optional<Reducible5Params> detect_reducible5(const CMat& a);

/// "theta,x,y" header plus one row per sample.
std::string boundary_csv(const CMat& a, int samples);

/// Self-contained 800x800 SVG of the boundary with flat portions emphasised.
/// Reducible 5x5 family inputs get the disk F(A1) and, for equal r_j, the
/// scaled cardioid as overlays.
std::string boundary_svg(const CMat& a, int samples, const SvgOptions& opt);

}  // namespace flatrange::cli
