#pragma once

// Umbrella header for the library part of resonator.

#include "resonator/bits.hpp"
#include "resonator/bound.hpp"
#include "resonator/field.hpp"
#include "resonator/identities.hpp"
#include "resonator/linalg.hpp"
#include "resonator/matroid.hpp"
#include "resonator/multinet.hpp"
#include "resonator/os_algebra.hpp"
#include "resonator/resonance.hpp"
#include "resonator/subspace.hpp"
#include "resonator/weak_map.hpp"
