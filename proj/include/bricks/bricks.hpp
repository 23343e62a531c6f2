#pragma once

#include "bricks/basis.hpp"
#include "bricks/brick.hpp"
#include "bricks/compactness.hpp"
#include "bricks/entropy.hpp"
#include "bricks/errors.hpp"
#include "bricks/half_heights.hpp"
#include "bricks/measures.hpp"
#include "bricks/operator_norms.hpp"
#include "bricks/radii.hpp"
#include "bricks/radius_reports.hpp"
#include "bricks/schedule.hpp"
#include "bricks/sequence.hpp"
#include "bricks/sign_kernel.hpp"
