#pragma once

#include "rwre/conductance.hpp"
#include "rwre/environment.hpp"
#include "rwre/error.hpp"
#include "rwre/group_words.hpp"
#include "rwre/network.hpp"
#include "rwre/parallel.hpp"
#include "rwre/random.hpp"
#include "rwre/speed.hpp"
#include "rwre/walk.hpp"
