import copy

from .pwlmap import MapParams

class Examples:
    r"""
    Parameter sets of `F` with known dynamics.

    Each example is a dict with the map parameters under ``"params"`` and,
    for the phase portraits, a ``"window"``. Unless noted the determinants are
    ``delta_L = 0.9``, ``delta_R = 0.7``, so the invertibility type is
    `Z_1 - Z_0 - Z_1`.

    EXAMPLES::

        >>> Examples.get_params("wqa_with_o")
        MapParams(delta_L=0.9, delta_R=0.7, tau_L=-2.0, tau_R=1.16)
    """

    @staticmethod
    def get_example(name):
        if hasattr(Examples, name) and isinstance(getattr(Examples, name), dict):
            return copy.deepcopy(getattr(Examples, name))

        raise ValueError(f"Can't find example with name {name}.")

    @staticmethod
    def get_params(name):
        return MapParams.from_dict(Examples.get_example(name)["params"])

    @staticmethod
    def names():
        return sorted(k for k, v in vars(Examples).items() if isinstance(v, dict))

    # Single WQAs, one per invertibility setting.
    wqa_gallery_a = {"params": {"delta_L": 0.75, "delta_R": 1.2, "tau_L": -0.7, "tau_R": -2.5},
                     "window": [-6.0, 6.0, -6.0, 6.0]}
    wqa_gallery_b = {"params": {"delta_L": 0.7, "delta_R": 1.001, "tau_L": 0.3, "tau_R": 0.71},
                     "window": [-4.0, 4.0, -4.0, 4.0]}
    wqa_gallery_c = {"params": {"delta_L": 0.9, "delta_R": 1.1, "tau_L": -2.5, "tau_R": -0.7},
                     "window": [-6.0, 6.0, -6.0, 6.0]}
    wqa_gallery_d = {"params": {"delta_L": 0.9, "delta_R": 1.1, "tau_L": -2.5, "tau_R": -1.2},
                     "window": [-6.0, 6.0, -6.0, 6.0]}
    wqa_gallery_e = {"params": {"delta_L": 0.84, "delta_R": 1.15, "tau_L": -1.0, "tau_R": -1.9},
                     "window": [-6.0, 6.0, -6.0, 6.0]}
    wqa_gallery_f = {"params": {"delta_L": 1.05, "delta_R": 0.7, "tau_L": -0.75, "tau_R": -1.6},
                     "window": [-6.0, 6.0, -6.0, 6.0]}

    # Two coexisting WQAs.
    two_wqas_expanding = {"params": {"delta_L": 0.9, "delta_R": 1.1, "tau_L": 0.3, "tau_R": 0.71},
                          "window": [-4.0, 4.0, -4.0, 4.0]}
    two_wqas_saddle = {"params": {"delta_L": 0.9, "delta_R": 1.11, "tau_L": -2.0, "tau_R": -1.91},
                       "window": [-6.0, 6.0, -6.0, 6.0]}

    # Crossing the divergence region of rotation number 1/5 at tau_L = -2.
    divergence_with_o = {"params": {"delta_L": 0.9, "delta_R": 0.7, "tau_L": -2.0, "tau_R": 1.1},
                         "window": [-8.0, 4.0, -4.0, 6.0]}
    lr4_halflines = {"params": {"delta_L": 0.9, "delta_R": 0.7, "tau_L": -2.0, "tau_R": 1.15045},
                     "window": [-8.0, 4.0, -4.0, 6.0]}
    wqa_with_o = {"params": {"delta_L": 0.9, "delta_R": 0.7, "tau_L": -2.0, "tau_R": 1.16},
                  "window": [-8.0, 4.0, -4.0, 6.0]}
    divergence_l2r3 = {"params": {"delta_L": 0.9, "delta_R": 0.7, "tau_L": -2.0, "tau_R": 1.075},
                       "window": [-8.0, 4.0, -4.0, 6.0]}
    l2r3_halflines = {"params": {"delta_L": 0.9, "delta_R": 0.7, "tau_L": -2.0, "tau_R": 1.0719},
                      "window": [-8.0, 4.0, -4.0, 6.0]}
    wqa_five_cyclic_right = {"params": {"delta_L": 0.9, "delta_R": 0.7, "tau_L": -2.0, "tau_R": 1.067},
                             "window": [-8.0, 4.0, -4.0, 6.0]}

    # Bounded segments of LR^4-cycles and the WQAs on either side.
    lr4_segments = {"params": {"delta_L": 0.9, "delta_R": 0.7, "tau_L": -1.125, "tau_R": 1.04053},
                    "window": [-6.0, 4.0, -4.0, 4.0]}
    lr4_segments_above = {"params": {"delta_L": 0.9, "delta_R": 0.7, "tau_L": -1.125, "tau_R": 1.05},
                          "window": [-6.0, 4.0, -4.0, 4.0]}
    lr4_segments_below = {"params": {"delta_L": 0.9, "delta_R": 0.7, "tau_L": -1.125, "tau_R": 1.02},
                          "window": [-6.0, 4.0, -4.0, 4.0]}

    # The divergence region of rotation number 1/5 on the left.
    r2l3_halflines = {"params": {"delta_L": 0.9, "delta_R": 0.7, "tau_L": 1.201945, "tau_R": -1.6},
                      "window": [-6.0, 6.0, -6.0, 6.0]}
    r2l3_near = {"params": {"delta_L": 0.9, "delta_R": 0.7, "tau_L": 1.193, "tau_R": -1.6},
                 "window": [-6.0, 6.0, -6.0, 6.0]}
    left_wqa_a = {"params": {"delta_L": 0.9, "delta_R": 0.7, "tau_L": 1.175, "tau_R": -0.543},
                  "window": [-6.0, 6.0, -6.0, 6.0]}
    left_wqa_b = {"params": {"delta_L": 0.9, "delta_R": 0.7, "tau_L": 1.19, "tau_R": -0.56},
                  "window": [-6.0, 6.0, -6.0, 6.0]}
    rl4_halflines_flip = {"params": {"delta_L": 0.9, "delta_R": 0.7, "tau_L": 1.333153, "tau_R": -1.7},
                          "window": [-6.0, 6.0, -6.0, 6.0]}
    rl4_near_flip = {"params": {"delta_L": 0.9, "delta_R": 0.7, "tau_L": 1.34, "tau_R": -1.7},
                     "window": [-6.0, 6.0, -6.0, 6.0]}
    wqa_five_blocks = {"params": {"delta_L": 0.9, "delta_R": 0.7, "tau_L": 1.365, "tau_R": -2.0},
                       "window": [-6.0, 6.0, -6.0, 6.0]}
    two_wqas_left = {"params": {"delta_L": 0.9, "delta_R": 0.7, "tau_L": 1.38975, "tau_R": -2.0},
                     "window": [-6.0, 6.0, -6.0, 6.0]}
    # tau_R is rounded; solve P_sigma(1) = 0 for sigma = R^4L^3 near it first.
    r4l3_segments = {"params": {"delta_L": 0.9, "delta_R": 0.7, "tau_L": 1.16, "tau_R": -2.199528},
                     "window": [-6.0, 6.0, -6.0, 6.0]}
