#ifndef SATQUAD_SATQUAD_HPP
#define SATQUAD_SATQUAD_HPP

#include "satquad/bitset.hpp"
#include "satquad/bounds.hpp"
#include "satquad/code.hpp"
#include "satquad/error.hpp"
#include "satquad/field.hpp"
#include "satquad/numeric.hpp"
#include "satquad/projective.hpp"
#include "satquad/quadric.hpp"
#include "satquad/saturator.hpp"
#include "satquad/setfile.hpp"

#endif  // SATQUAD_SATQUAD_HPP
