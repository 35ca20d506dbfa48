#pragma once

#define TREELDP_VERSION "0.1.0"
