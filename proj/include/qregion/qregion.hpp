#pragma once

#include "qregion/capacity.hpp"
#include "qregion/errors.hpp"
#include "qregion/info_measures.hpp"
#include "qregion/protocol_sim.hpp"
#include "qregion/quantum_objects.hpp"
#include "qregion/simplex.hpp"
#include "qregion/tensor_core.hpp"
