from setuptools import setup, find_packages

setup(name='gainrank',
      version=0.9,
      description='Rank, girth and reductions of quaternion unit gain graphs',
      url='',
      author='Roy Reshef',
      author_email='reshef.roy@gmail.com',
      packages=find_packages(include=['gainrank', 'gainrank.*']),
      install_requires=open('requirements.txt').read().splitlines(),
      entry_points={'console_scripts': ['gainrank=gainrank.cli:main']})
