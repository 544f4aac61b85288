import inspect
import json as json_builtin

from poseval.json.poseval_encoder import PosevalEncoder


class PosevalJson(object):
    """
    Class that provides json load/dump functionality for poseval value objects.

    Every dictionary carrying a ``type`` key registered in the class index is turned back
    into the registered class on load.  Output is deterministic: keys are sorted and floats
    use the shortest representation that round-trips.
    """

    def __init__(self):
        self._registered = {}
        self._index = None

    @property
    def _clazz_index(self):
        if self._index is None:
            self._index = {clazz.typ: clazz for clazz in self._default_classes()}
            self._index.update(self._registered)
        return self._index

    @staticmethod
    def _default_classes():
        # Imported on first use: the registered classes live in packages that import this one.
        from poseval.metrics.score_report import ScoreReport, DatasetScore, CurveRecord
        from poseval.metrics.threshold_grid import ThresholdGrid
        from poseval.cli.config import EvalConfig
        return [ScoreReport, DatasetScore, CurveRecord, ThresholdGrid, EvalConfig]

    def dumps(self, obj, **kwargs):
        """
        Serialize a poseval object, or container of them, into a json-formatted string.

        Parameters
        ----------
        obj: DictSerializable or container of DictSerializable
            The object(s) to serialize to a string.
        **kwargs: keyword args, optional
            Optional keyword arguments to pass to `json.dumps()`.

        Returns
        -------
        str
            A string version of the serialized objects.

        """
        return json_builtin.dumps(obj, cls=PosevalEncoder, sort_keys=True, **kwargs)

    def loads(self, json_str, **kwargs):
        """
        Deserialize a json-formatted string into poseval objects.

        Parameters
        ----------
        json_str: str
            A string representing the serialized objects, such as what is produced by
            :func:`dumps`.
        **kwargs: keyword args, optional
            Optional keyword arguments to pass to `json.loads()`.

        Returns
        -------
        DictSerializable or container of DictSerializable
            Deserialized versions of the objects represented by `json_str`.

        """
        return json_builtin.loads(json_str, object_hook=self._build, **kwargs)

    def load(self, fp, **kwargs):
        """Load objects from a readable file object."""
        return self.loads(fp.read(), **kwargs)

    def dump(self, obj, fp, **kwargs):
        """Write the serialized objects to a writable file object."""
        fp.write(self.dumps(obj, **kwargs))

    def register_classes(self, classes):
        """
        Register additional classes to the deserialization object hook.

        Parameters
        ----------
        classes: Dict[str, type]
            A dict mapping the type string to the class.  Existing keys are overwritten.

        """
        if not isinstance(classes, dict):
            raise ValueError("Must be given a dict from str -> class")
        non_string_keys = [x for x in classes.keys() if not isinstance(x, str)]
        if len(non_string_keys) > 0:
            raise ValueError(
                "The keys must be strings, but got {} as keys".format(non_string_keys))
        non_class_values = [x for x in classes.values() if not inspect.isclass(x)]
        if len(non_class_values) > 0:
            raise ValueError(
                "The values must be classes, but got {} as values".format(non_class_values))
        self._registered.update(classes)
        if self._index is not None:
            self._index.update(classes)

    def _build(self, d):
        typ = d.get("type")
        if isinstance(typ, str) and typ in self._clazz_index:
            return self._clazz_index[typ].from_dict(d)
        return d
