#pragma once

#include "adhm/field.hpp"
#include "adhm/matrix.hpp"
#include "adhm/linalg.hpp"
#include "adhm/polynomial.hpp"
#include "adhm/pencil.hpp"
#include "adhm/datum.hpp"
#include "adhm/regularity.hpp"
#include "adhm/gauge.hpp"
#include "adhm/deformation.hpp"
#include "adhm/monad.hpp"
#include "adhm/twistor.hpp"
