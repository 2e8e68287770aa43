#ifndef PTCOMPAT_PTCOMPAT_HPP
#define PTCOMPAT_PTCOMPAT_HPP

#include "catalog.hpp"
#include "compat.hpp"
#include "errors.hpp"
#include "io.hpp"
#include "lp.hpp"
#include "model.hpp"
#include "qubit.hpp"
#include "rational.hpp"
#include "sampler.hpp"

#endif
