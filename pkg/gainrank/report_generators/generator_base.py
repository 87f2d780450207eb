from abc import ABC

from gainrank.results import DataContainer


class ReportGeneratorBase(ABC):
    def __init__(self, data_container: DataContainer, config):
        self.data_container = data_container
        self.config = config

    def generate(self, additional_data_items=None) -> str:
        """
        return formatted report string
        :param additional_data_items: extra name -> value pairs rendered ahead of the container items
        :return:
        """
        raise NotImplementedError("subclass should implement 'generate' function")
