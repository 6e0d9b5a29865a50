#pragma once

#include "nupn/multiset.hpp"
#include "nupn/net.hpp"
#include "nupn/canonical.hpp"
#include "nupn/firing.hpp"
#include "nupn/pt.hpp"
#include "nupn/backward.hpp"
#include "nupn/forward.hpp"
#include "nupn/reductions.hpp"
#include "nupn/io.hpp"
