#pragma once

#include "bench.hpp"
#include "fg_assembly.hpp"
#include "io.hpp"
#include "mode_geometry.hpp"
#include "oracle.hpp"
#include "spectral.hpp"
#include "symmetry_basis.hpp"
#include "system_spec.hpp"
#include "verify.hpp"
#include "wavefunction.hpp"
