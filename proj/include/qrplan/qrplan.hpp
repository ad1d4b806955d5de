#pragma once

#include "qrplan/bench.hpp"
#include "qrplan/coverage.hpp"
#include "qrplan/distance.hpp"
#include "qrplan/error.hpp"
#include "qrplan/exact.hpp"
#include "qrplan/mca.hpp"
#include "qrplan/placement.hpp"
#include "qrplan/sca.hpp"
#include "qrplan/solution_io.hpp"
#include "qrplan/topology.hpp"
#include "qrplan/topology_io.hpp"
#include "qrplan/verify.hpp"
#include "qrplan/version.hpp"
