"""Systems of named point subsets (the objects whose intersections we study)."""
import numpy as np

from .metric import point_set, set_diameter


class ObjectSystem:
    """Nonempty point subsets of one space; object ``i`` has id ``i``."""

    def __init__(self, space, objects):
        self.space = space
        self.objects = []
        for i, obj in enumerate(objects):
            members = point_set(obj)
            if members.size == 0:
                raise ValueError(f"object {i} is empty")
            if members[0] < 0 or members[-1] >= space.size:
                bad = members[0] if members[0] < 0 else members[-1]
                raise IndexError(f"object {i} references point {bad} outside [0, {space.size})")
            self.objects.append(members)
        self._diameters = None

    def __len__(self):
        return len(self.objects)

    def __getitem__(self, i):
        return self.objects[i]

    def __iter__(self):
        return iter(self.objects)

    @property
    def diameters(self):
        if self._diameters is None:
            self._diameters = np.array([set_diameter(self.space, o) for o in self.objects])
        return self._diameters

    def subsystem(self, ids):
        return ObjectSystem(self.space, [self.objects[i] for i in ids])
