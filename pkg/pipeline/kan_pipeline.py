# coding=utf-8
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Optional

import config
from kan_helpers import AutomatonError, logger
from pipeline import run_pipeline
from pipeline.pipes import general
from pipeline.pipes.build_automata import build_nfa, complement_dfa, determinize_nfa, minimize_kb
from pipeline.pipes.get_regex import get_count, get_equations, get_regex

PRESENTATION_PIPES = [
    general.load_presentation,
    general.complete_system,
]

OBJECT_PIPES = [
    build_nfa,
    determinize_nfa,
    complement_dfa,
    minimize_kb,
    get_equations,
    get_regex,
    get_count,
]


class KanPipeline:
    """
    Presentation file -> completed rewrite system -> per object K_B machines
    and regular expressions. The presentation stage runs once, the object
    stages run on demand and may run on a thread pool.
    """

    def __init__(self, filename: Optional[str] = None, text: Optional[str] = None,
                 max_rounds: Optional[int] = None, jobs: Optional[int] = None) -> None:
        self.filename = filename
        self.text = text
        self.max_rounds = max_rounds
        self.jobs = config.DEFAULT_JOBS if jobs is None else jobs
        self._data: Optional[dict] = None
        self._objects: Dict[str, dict] = {}

    def run(self) -> dict:
        if self._data is None:
            self._data = run_pipeline(
                PRESENTATION_PIPES, filename=self.filename, text=self.text, max_rounds=self.max_rounds)
        return self._data

    @property
    def presentation(self):
        return self.run()['presentation']

    @property
    def system(self):
        return self.run()['system']

    @property
    def completion(self):
        return self.run()['completion']

    def run_object(self, obj: str) -> dict:
        if obj not in self.presentation.delta.objects:
            raise AutomatonError('unknown object %r' % obj)
        if obj not in self._objects:
            data = self.run()
            self._objects[obj] = run_pipeline(
                OBJECT_PIPES, presentation=data['presentation'], system=data['system'], obj=obj)
        return self._objects[obj]

    def run_objects(self, objects: Optional[List[str]] = None) -> List[dict]:
        """Results in the given order (declared object order by default)."""
        if objects is None:
            objects = list(self.presentation.delta.objects)
        self.run()

        if self.jobs > 1 and len(objects) > 1:
            logger.info('Running %d object pipelines on %d threads', len(objects), self.jobs)
            with ThreadPoolExecutor(max_workers=self.jobs) as executor:
                return list(executor.map(self.run_object, objects))

        return [self.run_object(obj) for obj in objects]
