#pragma once

#include "qcs/cli.hpp"
#include "qcs/coherent.hpp"
#include "qcs/errors.hpp"
#include "qcs/fockoracle.hpp"
#include "qcs/io.hpp"
#include "qcs/observables.hpp"
#include "qcs/parallel.hpp"
#include "qcs/qkernel.hpp"
#include "qcs/revival.hpp"
#include "qcs/scales.hpp"
#include "qcs/svg.hpp"
#include "qcs/verify.hpp"
