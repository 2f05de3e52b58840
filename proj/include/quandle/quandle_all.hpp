#pragma once

#include "augment.hpp"
#include "decompose.hpp"
#include "enumerate.hpp"
#include "io.hpp"
#include "oracle.hpp"
#include "perm.hpp"
#include "quandle.hpp"
