#include "torustri/unicell.hpp"
