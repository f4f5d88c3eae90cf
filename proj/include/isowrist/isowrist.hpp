// Umbrella header for the isowrist library.
#pragma once

#include "isowrist/sphere_geometry.hpp"
#include "isowrist/wrist_kinematics.hpp"
#include "isowrist/isotropy_solver.hpp"
#include "isowrist/classification.hpp"
