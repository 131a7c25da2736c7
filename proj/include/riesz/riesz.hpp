#pragma once

#include "riesz/blocks.hpp"
#include "riesz/dyadic.hpp"
#include "riesz/errors.hpp"
#include "riesz/fuzz.hpp"
#include "riesz/inner.hpp"
#include "riesz/io.hpp"
#include "riesz/matrix.hpp"
#include "riesz/multop.hpp"
#include "riesz/scalar.hpp"
#include "riesz/superop.hpp"
#include "riesz/vector.hpp"
#include "riesz/version.hpp"
