#pragma once

// Umbrella header for the Ocean-DC toolkit.

#include "oceandc/assemble.hpp"
#include "oceandc/bands.hpp"
#include "oceandc/classify.hpp"
#include "oceandc/config.hpp"
#include "oceandc/cube.hpp"
#include "oceandc/errors.hpp"
#include "oceandc/geodesy.hpp"
#include "oceandc/geotiff.hpp"
#include "oceandc/harmonize.hpp"
#include "oceandc/indices.hpp"
#include "oceandc/metadata.hpp"
#include "oceandc/netcdf.hpp"
#include "oceandc/pipeline.hpp"
#include "oceandc/raster.hpp"
#include "oceandc/scene.hpp"
#include "oceandc/shapefile.hpp"
#include "oceandc/timeutil.hpp"
