#pragma once

#include "spectral_zeros/errors.hpp"
#include "spectral_zeros/core_numerics.hpp"
#include "spectral_zeros/spectra.hpp"
#include "spectral_zeros/product_forms.hpp"
#include "spectral_zeros/zeta.hpp"
#include "spectral_zeros/qnm.hpp"
#include "spectral_zeros/grid_scan.hpp"
#include "spectral_zeros/io.hpp"
