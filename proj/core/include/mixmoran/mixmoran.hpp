#ifndef MIXMORAN_MIXMORAN_HPP
#define MIXMORAN_MIXMORAN_HPP

#include "mixmoran/closed_forms.hpp"
#include "mixmoran/configuration.hpp"
#include "mixmoran/drift.hpp"
#include "mixmoran/estimator.hpp"
#include "mixmoran/exact.hpp"
#include "mixmoran/graph.hpp"
#include "mixmoran/kernel.hpp"
#include "mixmoran/params.hpp"
#include "mixmoran/rational.hpp"
#include "mixmoran/rng.hpp"

#endif
