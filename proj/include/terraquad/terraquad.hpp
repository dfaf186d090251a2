#pragma once

#include "terraquad/butterfly.hpp"
#include "terraquad/candidate_chords.hpp"
#include "terraquad/geometry.hpp"
#include "terraquad/hull.hpp"
#include "terraquad/instance_gen.hpp"
#include "terraquad/oracle.hpp"
#include "terraquad/parallel.hpp"
#include "terraquad/quad_solver.hpp"
#include "terraquad/rect_solver.hpp"
#include "terraquad/rmq.hpp"
#include "terraquad/rng.hpp"
#include "terraquad/serialize.hpp"
#include "terraquad/svg.hpp"
#include "terraquad/terrain.hpp"
#include "terraquad/terrain_io.hpp"
#include "terraquad/verify.hpp"
