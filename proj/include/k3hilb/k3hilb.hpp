#pragma once

#include "k3hilb/ample_cone.hpp"
#include "k3hilb/classifier.hpp"
#include "k3hilb/error.hpp"
#include "k3hilb/integer.hpp"
#include "k3hilb/ns_lattice.hpp"
#include "k3hilb/oracle.hpp"
#include "k3hilb/pell.hpp"
#include "k3hilb/report.hpp"
