"""Worker pool for independent scans (trials, link certificates, coset blocks)."""

import logging
from concurrent.futures import ThreadPoolExecutor, as_completed
from typing import Any, Callable, Dict, List, Sequence, Tuple

logger = logging.getLogger(__name__)


def _run_one(fn: Callable, item: Any, index: int) -> Tuple[int, Any, str]:
    try:
        return (index, fn(item), None)
    except Exception as e:
        return (index, None, f"{type(e).__name__}: {e}")


def run_parallel(fn: Callable[[Any], Any], items: Sequence[Any], workers: int = 4,
                 quiet: bool = True, desc: str = "Working") -> Tuple[Dict[int, Any], Dict[int, str]]:
    """
    Apply fn to every item on a thread pool.

    Returns (results, errors), both keyed by item index. Callers consume
    results in sorted index order so the outcome does not depend on scheduling.
    """
    results: Dict[int, Any] = {}
    errors: Dict[int, str] = {}
    if workers <= 1 or len(items) <= 1:
        for i, item in enumerate(items):
            index, value, error = _run_one(fn, item, i)
            if error:
                errors[index] = error
            else:
                results[index] = value
        return results, errors

    with ThreadPoolExecutor(max_workers=workers) as executor:
        futures = {executor.submit(_run_one, fn, item, i): i for i, item in enumerate(items)}

        try:
            from tqdm import tqdm
            progress = tqdm(total=len(items), desc=desc, disable=quiet)
        except ImportError:
            progress = None

        for future in as_completed(futures):
            index, value, error = future.result()
            if error:
                logger.warning("Task %d failed: %s", index + 1, error)
                errors[index] = error
            else:
                results[index] = value
            if progress:
                progress.update(1)

        if progress:
            progress.close()

    return results, errors


def ordered_results(results: Dict[int, Any]) -> List[Any]:
    return [results[i] for i in sorted(results.keys())]
