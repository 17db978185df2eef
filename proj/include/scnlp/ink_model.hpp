#pragma once

#include "scnlp/fontkit.hpp"
#include "scnlp/model_file.hpp"

namespace scnlp {

/// Hand-weighted two-class network for a 3x224x224 canvas with white ink.
///
/// Layer 1 binarizes channel 0 (ink -> code 1), five pools reduce it to a 7x7
/// occupancy map, and three valid convs (7 -> 5 -> 3 -> 1) compute
///   score0 = 255 * (inked cells in columns 0..2 - inked cells in columns 4..6)
///   score1 = -score0
/// in exact integer arithmetic. Labels are {"left", "right"}; ties go to "left".
Model ink_balance_model();

/// The embedded font with '.' drawn blank, so "." tokens occupy grid cells
/// without leaving ink.
BitmapFont dotless_font();

}  // namespace scnlp
