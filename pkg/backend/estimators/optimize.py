# Built-in imports
from dataclasses import dataclass
from typing import Callable, Optional

# External imports
import numpy as np
from scipy.optimize import minimize

# Own imports
from common.config import OptimizerCfg
from common.exceptions import MaxIterations
from common.logger import custom_logger


logger = custom_logger()


@dataclass(frozen=True)
class SimplexResult:
    x: np.ndarray
    fun: float
    converged: bool
    iterations: int


def nelder_mead_minimize(
    objective: Callable[[np.ndarray], float],
    x0,
    cfg: Optional[OptimizerCfg] = None,
    strict: bool = False,
) -> SimplexResult:
    """
    Nelder-Mead simplex minimization (reflection 1, expansion 2, contraction
    and shrink 0.5), stopping when the simplex spread falls under the
    configured tolerances in both x and f.
    :param strict (bool): raise MaxIterations instead of flagging non-convergence.
    """
    cfg = cfg or OptimizerCfg()
    x0 = np.atleast_1d(np.asarray(x0, dtype=float))
    if not np.isfinite(objective(x0)):
        raise ValueError("objective is not finite at the starting point")

    result = minimize(
        objective,
        x0,
        method="Nelder-Mead",
        options={
            "xatol": cfg.xatol,
            "fatol": cfg.fatol,
            "maxiter": cfg.max_iter,
            "maxfev": 4 * cfg.max_iter * (x0.size + 1),
            "adaptive": False,
        },
    )
    converged = bool(result.success)
    if not converged:
        logger.warning(f"Nelder-Mead stopped unconverged: {result.message}")
        if strict:
            raise MaxIterations(f"no convergence in {cfg.max_iter} iterations", best=result.x)
    return SimplexResult(
        x=np.asarray(result.x, dtype=float),
        fun=float(result.fun),
        converged=converged,
        iterations=int(result.nit),
    )
