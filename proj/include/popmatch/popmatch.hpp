#ifndef POPMATCH_POPMATCH_HPP
#define POPMATCH_POPMATCH_HPP

#include "popmatch/core.hpp"
#include "popmatch/error.hpp"
#include "popmatch/fuzz.hpp"
#include "popmatch/gadgets.hpp"
#include "popmatch/io.hpp"
#include "popmatch/popularity.hpp"
#include "popmatch/pvc.hpp"

#endif  // POPMATCH_POPMATCH_HPP
