#pragma once

#include "spherium/chords.hpp"
#include "spherium/entangle.hpp"
#include "spherium/errors.hpp"
#include "spherium/oracle.hpp"
#include "spherium/specfun.hpp"
#include "spherium/states.hpp"
