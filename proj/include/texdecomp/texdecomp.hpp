#pragma once

#include "texdecomp/bench.hpp"
#include "texdecomp/bregman.hpp"
#include "texdecomp/chambolle.hpp"
#include "texdecomp/decompose.hpp"
#include "texdecomp/field.hpp"
#include "texdecomp/gprox.hpp"
#include "texdecomp/grid.hpp"
#include "texdecomp/imageio.hpp"
#include "texdecomp/spectral.hpp"
#include "texdecomp/stats.hpp"
#include "texdecomp/synthetic.hpp"
